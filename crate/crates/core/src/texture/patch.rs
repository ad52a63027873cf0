use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};

pub const DEFAULT_LEVELS: usize = 32;

/// A quantized gray-level image patch, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayPatch {
    height: usize,
    width: usize,
    levels: usize,
    pixels: Vec<u32>,
}

impl GrayPatch {
    pub fn new(height: usize, width: usize, levels: usize, pixels: Vec<u32>) -> Result<Self> {
        if height < 2 || width < 2 {
            return Err(Error::PatchTooSmall { height, width });
        }
        if levels < 2 {
            return Err(Error::InvalidPatch(format!(
                "need at least 2 gray levels, got {levels}"
            )));
        }
        if pixels.len() != height * width {
            return Err(Error::InvalidPatch(format!(
                "{} pixels for a {height}x{width} patch",
                pixels.len()
            )));
        }
        if let Some(&value) = pixels.iter().find(|&&v| v as usize >= levels) {
            return Err(Error::PixelOutOfRange { value, levels });
        }
        Ok(GrayPatch {
            height,
            width,
            levels,
            pixels,
        })
    }

    pub fn from_rows(rows: &[Vec<u32>], levels: usize) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidPatch("rows have different lengths".into()));
        }
        GrayPatch::new(rows.len(), width, levels, rows.concat())
    }

    /// Maps raw values in `0..=max_value` linearly onto `levels` gray levels.
    pub fn quantized(height: usize, width: usize, raw: &[u32], max_value: u32, levels: usize) -> Result<Self> {
        if let Some(&value) = raw.iter().find(|&&v| v > max_value) {
            return Err(Error::InvalidPatch(format!("raw value {value} exceeds {max_value}")));
        }
        let span = u64::from(max_value) + 1;
        let pixels = raw
            .iter()
            .map(|&v| (u64::from(v) * levels as u64 / span) as u32)
            .collect();
        GrayPatch::new(height, width, levels, pixels)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn pixels(&self) -> &[u32] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.pixels[row * self.width + col]
    }
}

/// Reads a PGM file and quantizes its 8-bit gray values to `levels`.
pub fn read_pgm(path: &Path, levels: usize) -> Result<GrayPatch> {
    let bytes = std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    decode_pgm(&bytes, levels)
}

pub fn decode_pgm(bytes: &[u8], levels: usize) -> Result<GrayPatch> {
    let img = image::load_from_memory_with_format(bytes, image::ImageFormat::Pnm)
        .map_err(|e| Error::InvalidPatch(e.to_string()))?
        .to_luma8();
    let (w, h) = img.dimensions();
    let raw: Vec<u32> = img.into_raw().into_iter().map(u32::from).collect();
    GrayPatch::quantized(h as usize, w as usize, &raw, 255, levels)
}

/// Reads a patch stored as a comma-separated matrix of non-negative
/// integers, one image row per line. Values already below `levels` are kept;
/// otherwise the matrix is quantized against its own maximum.
pub fn read_csv_patch<R: Read>(reader: R, levels: usize) -> Result<GrayPatch> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let row = record
            .iter()
            .map(|v| v.parse::<u32>().map_err(|e| Error::Parse(format!("pixel `{v}`: {e}"))))
            .collect::<Result<Vec<u32>>>()?;
        rows.push(row);
    }
    let max = rows.iter().flatten().copied().max().unwrap_or(0);
    if (max as usize) < levels {
        return GrayPatch::from_rows(&rows, levels);
    }
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(Error::InvalidPatch("rows have different lengths".into()));
    }
    GrayPatch::quantized(rows.len(), width, &rows.concat(), max, levels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert_eq!(
            GrayPatch::new(1, 5, 4, vec![0; 5]),
            Err(Error::PatchTooSmall { height: 1, width: 5 })
        );
        assert_eq!(
            GrayPatch::new(2, 2, 4, vec![0, 1, 2, 4]),
            Err(Error::PixelOutOfRange { value: 4, levels: 4 })
        );
        assert!(GrayPatch::new(2, 2, 1, vec![0; 4]).is_err());
        assert!(GrayPatch::new(2, 2, 4, vec![0; 3]).is_err());
    }

    #[test]
    fn quantization() {
        let p = GrayPatch::quantized(2, 2, &[0, 63, 64, 255], 255, 4).unwrap();
        assert_eq!(p.pixels(), [0, 0, 1, 3]);
    }

    #[test]
    fn pgm_binary() {
        let mut bytes = b"P5\n3 2\n255\n".to_vec();
        bytes.extend_from_slice(&[0, 128, 255, 10, 20, 30]);
        let p = decode_pgm(&bytes, 2).unwrap();
        assert_eq!((p.height(), p.width()), (2, 3));
        assert_eq!(p.pixels(), [0, 1, 1, 0, 0, 0]);
        assert!(decode_pgm(b"not an image", 2).is_err());
    }

    #[test]
    fn csv_matrix() {
        let p = read_csv_patch("0,1\n1,0\n".as_bytes(), 2).unwrap();
        assert_eq!(p.pixels(), [0, 1, 1, 0]);
        let q = read_csv_patch("0,100\n50,99\n".as_bytes(), 4).unwrap();
        assert_eq!(q.pixels(), [0, 3, 1, 3]);
    }
}
