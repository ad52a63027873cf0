use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::texture::{haralick, read_pgm, TextureFeatures, FEATURE_NAMES};

#[derive(Clone, Debug, PartialEq)]
pub struct FeatureRow {
    pub id: String,
    pub label: String,
    pub features: TextureFeatures,
}

#[derive(Clone, Debug, Default)]
pub struct Extraction {
    pub rows: Vec<FeatureRow>,
    /// Files that could not be used, with the reason.
    pub skipped: Vec<(PathBuf, String)>,
}

/// `label_id.pgm` → (label, id). The label ends at the first underscore.
pub fn parse_patch_name(path: &Path) -> Option<(String, String)> {
    let stem = path.file_stem()?.to_str()?;
    let (label, id) = stem.split_once('_')?;
    (!label.is_empty() && !id.is_empty()).then(|| (label.to_string(), id.to_string()))
}

/// Texture features of every `.pgm` file in `dir`, in file-name order.
/// Unreadable or misnamed files are skipped with a warning.
pub fn extract_features(dir: &Path, levels: usize) -> Result<Extraction> {
    let entries = fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x.eq_ignore_ascii_case("pgm")))
        .collect();
    paths.sort();
    let mut out = Extraction::default();
    for path in paths {
        let Some((label, id)) = parse_patch_name(&path) else {
            log::warn!("skipping {}: name is not label_id.pgm", path.display());
            out.skipped.push((path, "name is not label_id.pgm".into()));
            continue;
        };
        match read_pgm(&path, levels) {
            Ok(patch) => out.rows.push(FeatureRow {
                id,
                label,
                features: haralick(&patch),
            }),
            Err(e) => {
                log::warn!("skipping {}: {e}", path.display());
                out.skipped.push((path, e.to_string()));
            }
        }
    }
    Ok(out)
}

/// Columns: id, the six features, label.
pub fn write_feature_csv<W: Write>(rows: &[FeatureRow], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let mut header = vec!["id"];
    header.extend(FEATURE_NAMES);
    header.push("label");
    w.write_record(&header)?;
    for row in rows {
        let mut record = vec![row.id.clone()];
        record.extend(row.features.to_array().iter().map(|v| v.to_string()));
        record.push(row.label.clone());
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}
