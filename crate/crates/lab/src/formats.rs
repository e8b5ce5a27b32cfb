//! JSON file formats for triangulations, sign distributions and run
//! results.

use std::fs;
use std::path::Path;

use num_rational::BigRational;
use patchwork_lab_core::patchwork::{SignDistribution, Triangulation};
use patchwork_lab_core::scheme::scheme_stats;
use patchwork_lab_core::RealScheme;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// On-disk triangulation. Heights are exact rationals written as strings
/// (`"12"` or `"-3/4"`) so no precision is lost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationFile {
    pub d: u32,
    pub vertices: Vec<[i64; 2]>,
    pub triangles: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heights: Option<Vec<String>>,
}

impl TriangulationFile {
    pub fn from_triangulation(t: &Triangulation) -> Self {
        TriangulationFile {
            d: t.d,
            vertices: t.vertices.iter().map(|&(x, y)| [x, y]).collect(),
            triangles: t.triangles.clone(),
            heights: t.heights.as_ref().map(|hs| hs.iter().map(ToString::to_string).collect()),
        }
    }

    pub fn to_triangulation(&self) -> Result<Triangulation, CliError> {
        let heights = match &self.heights {
            None => None,
            Some(hs) => Some(
                hs.iter()
                    .map(|h| h.parse::<BigRational>().map_err(|_| CliError::Domain(format!("bad height {h:?}"))))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        let vertices = self.vertices.iter().map(|&[x, y]| (x, y)).collect();
        Ok(Triangulation::new(self.d, vertices, self.triangles.clone(), heights)?)
    }
}

pub fn triangulation_json(t: &Triangulation) -> String {
    serde_json::to_string(&TriangulationFile::from_triangulation(t)).expect("serializable")
}

pub fn signs_json(s: &SignDistribution) -> String {
    serde_json::to_string(s.as_slice()).expect("serializable")
}

pub fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn read_triangulation(path: &Path) -> Result<Triangulation, CliError> {
    let file: TriangulationFile = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
    file.to_triangulation()
}

pub fn read_signs(path: &Path) -> Result<SignDistribution, CliError> {
    let raw: Vec<i64> =
        serde_json::from_str(&read(path)?).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
    let signs = raw
        .into_iter()
        .map(|v| match v {
            1 => Ok(1i8),
            -1 => Ok(-1i8),
            other => Err(CliError::Domain(format!("signs must be +1 or -1, got {other}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SignDistribution::new(signs)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeSummary {
    pub scheme: String,
    pub pseudoline: bool,
    pub oval_count: usize,
    pub depth: usize,
    pub deep_oval_count: usize,
}

impl SchemeSummary {
    pub fn new(s: &RealScheme) -> Self {
        let stats = scheme_stats(s);
        SchemeSummary {
            scheme: s.to_string(),
            pseudoline: s.pseudoline,
            oval_count: stats.oval_count,
            depth: stats.depth,
            deep_oval_count: stats.deep_oval_count,
        }
    }
}
