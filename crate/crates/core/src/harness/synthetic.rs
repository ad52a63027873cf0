//! Synthetic texture patches for exercising the classification pipeline.

use std::path::Path;

use rand::Rng;

use crate::error::{Error, Result};
use crate::texture::GrayPatch;

/// A ramp rising by one level every four pixels along both axes, starting
/// at a random level low enough that the ramp never saturates. Every such
/// patch has the same co-occurrence statistics.
pub fn ramp_patch<R: Rng>(rng: &mut R, size: usize, levels: usize) -> Result<GrayPatch> {
    let rise = 2 * (size - 1) / 4;
    if rise >= levels {
        return Err(Error::InvalidPatch(format!(
            "a {size}-pixel ramp needs more than {levels} levels"
        )));
    }
    let base = rng.gen_range(0..levels - rise);
    let pixels = (0..size * size)
        .map(|k| (base + (k / size + k % size) / 4) as u32)
        .collect();
    GrayPatch::new(size, size, levels, pixels)
}

/// A checkerboard of two random distinct levels.
pub fn checker_patch<R: Rng>(rng: &mut R, size: usize, levels: usize) -> Result<GrayPatch> {
    let a = rng.gen_range(0..levels);
    let b = (a + rng.gen_range(1..levels)) % levels;
    let pixels = (0..size * size)
        .map(|k| if (k / size + k % size).is_multiple_of(2) { a } else { b } as u32)
        .collect();
    GrayPatch::new(size, size, levels, pixels)
}

/// Independent uniform pixels in `0..amplitude`.
pub fn noise_patch<R: Rng>(rng: &mut R, size: usize, levels: usize, amplitude: usize) -> Result<GrayPatch> {
    let amplitude = amplitude.clamp(1, levels);
    let pixels = (0..size * size).map(|_| rng.gen_range(0..amplitude) as u32).collect();
    GrayPatch::new(size, size, levels, pixels)
}

/// Labeled patches whose classes never share a feature value: ramps and
/// checkerboards.
pub fn separable_patches<R: Rng>(
    rng: &mut R,
    per_class: usize,
    size: usize,
    levels: usize,
) -> Result<Vec<(String, GrayPatch)>> {
    let mut out = Vec::with_capacity(2 * per_class);
    for _ in 0..per_class {
        out.push(("ramp".to_string(), ramp_patch(rng, size, levels)?));
        out.push(("checker".to_string(), checker_patch(rng, size, levels)?));
    }
    Ok(out)
}

/// Labeled noise patches whose amplitudes are close enough for the feature
/// distributions to overlap.
pub fn overlapping_patches<R: Rng>(
    rng: &mut R,
    per_class: usize,
    size: usize,
    levels: usize,
) -> Result<Vec<(String, GrayPatch)>> {
    let mut out = Vec::with_capacity(2 * per_class);
    for _ in 0..per_class {
        out.push(("fine".to_string(), noise_patch(rng, size, levels, levels * 5 / 16)?));
        out.push(("coarse".to_string(), noise_patch(rng, size, levels, levels * 6 / 16)?));
    }
    Ok(out)
}

/// Writes an 8-bit binary PGM whose gray values quantize back to the patch
/// levels exactly.
pub fn write_pgm(path: &Path, patch: &GrayPatch) -> Result<()> {
    if patch.levels() > 256 {
        return Err(Error::InvalidPatch("8-bit output holds at most 256 levels".into()));
    }
    let levels = patch.levels() as u32;
    let bytes: Vec<u8> = patch
        .pixels()
        .iter()
        .map(|&v| (v * 256).div_ceil(levels) as u8)
        .collect();
    let img = image::GrayImage::from_raw(patch.width() as u32, patch.height() as u32, bytes)
        .ok_or_else(|| Error::InvalidPatch("pixel buffer does not match dimensions".into()))?;
    img.save_with_format(path, image::ImageFormat::Pnm)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes `patches` as `label_NNNN.pgm` files into `dir`.
pub fn write_patch_dir(dir: &Path, patches: &[(String, GrayPatch)]) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    for (i, (label, patch)) in patches.iter().enumerate() {
        write_pgm(&dir.join(format!("{label}_{i:04}.pgm")), patch)?;
    }
    Ok(())
}
