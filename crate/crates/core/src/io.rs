//! Plain-text trajectory files.
//!
//! ```text
//! #DQTRAJ 1 qt
//! # seed 7
//! 0 tx ty tz qw qx qy qz
//! 1 ...
//! ```
//!
//! The header names the format version and the record layout: `qt` records
//! hold a translation and a scalar-first quaternion, `dq` records hold the
//! eight dual quaternion coordinates, real part first. Further `#` lines
//! are `key value` metadata. Numbers are written with 17 significant digits
//! so a write/read cycle reproduces every value.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::dual::{DualQuaternion, RigidPose, UnitDualQuaternion, INPUT_TOLERANCE};
use crate::error::{Error, Result};
use crate::quat::{Quaternion, UnitQuaternion};
use crate::regression::Space;
use crate::trajectory::PoseTrajectory;

pub const MAGIC: &str = "#DQTRAJ";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryFile {
    pub space: Space,
    /// Ordered `key value` header entries.
    pub metadata: Vec<(String, String)>,
    pub trajectory: PoseTrajectory,
}

impl TrajectoryFile {
    pub fn new(space: Space, trajectory: PoseTrajectory) -> Self {
        Self {
            space,
            metadata: Vec::new(),
            trajectory,
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.push((key.to_string(), value.to_string()));
        self
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{MAGIC} {FORMAT_VERSION} {}\n", self.space.tag());
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k} {v}");
        }
        for (i, p) in self.trajectory.iter().enumerate() {
            let values: Vec<f64> = match self.space {
                Space::Split => {
                    let q = p.rotation.to_array();
                    vec![p.translation.x, p.translation.y, p.translation.z, q[0], q[1], q[2], q[3]]
                }
                Space::Dual => UnitDualQuaternion::from_pose(p).to_array().to_vec(),
            };
            let _ = write!(out, "{i}");
            for v in values {
                let _ = write!(out, " {v:.16e}");
            }
            out.push('\n');
        }
        out
    }

    /// Parses file contents; `path` is only used in error messages.
    pub fn parse(text: &str, path: &Path) -> Result<Self> {
        let err = |line: usize, message: String| Error::Parse {
            path: path.to_path_buf(),
            line,
            message,
        };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (_, header) = lines.next().ok_or_else(|| err(1, "empty file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let space = match fields.as_slice() {
            [MAGIC, version, tag] => {
                if version.parse::<u32>().ok() != Some(FORMAT_VERSION) {
                    return Err(err(1, format!("unsupported format version `{version}`")));
                }
                match *tag {
                    "qt" => Space::Split,
                    "dq" => Space::Dual,
                    other => return Err(err(1, format!("unknown space `{other}`"))),
                }
            }
            _ => return Err(err(1, format!("expected `{MAGIC} {FORMAT_VERSION} qt|dq` header"))),
        };
        let width = match space {
            Space::Split => 7,
            Space::Dual => 8,
        };

        let mut file = Self::new(space, PoseTrajectory::default());
        for (no, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(meta) = line.strip_prefix('#') {
                let meta = meta.trim();
                if !meta.is_empty() {
                    let (k, v) = meta.split_once(char::is_whitespace).unwrap_or((meta, ""));
                    file.metadata.push((k.to_string(), v.trim().to_string()));
                }
                continue;
            }
            let mut tokens = line.split_whitespace();
            let index = tokens.next().unwrap_or_default();
            let expected = file.trajectory.len();
            if index.parse::<usize>().ok() != Some(expected) {
                return Err(err(no, format!("expected record index {expected}, found `{index}`")));
            }
            let values = tokens
                .map(|t| t.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or(t))
                .collect::<std::result::Result<Vec<f64>, &str>>()
                .map_err(|t| err(no, format!("invalid number `{t}`")))?;
            if values.len() != width {
                return Err(err(
                    no,
                    format!("expected {width} values for space {}, found {}", space.tag(), values.len()),
                ));
            }
            let pose = match space {
                Space::Split => {
                    let q = Quaternion::new(values[3], values[4], values[5], values[6]);
                    let r = UnitQuaternion::try_new(q, INPUT_TOLERANCE)
                        .map_err(|e| err(no, e.to_string()))?
                        .renormalize();
                    RigidPose::new(r, nalgebra::Vector3::new(values[0], values[1], values[2]))
                }
                Space::Dual => {
                    let mut c = [0.0; 8];
                    c.copy_from_slice(&values);
                    let q = UnitDualQuaternion::try_new(DualQuaternion::from_array(c), INPUT_TOLERANCE)
                        .map_err(|e| err(no, e.to_string()))?;
                    RigidPose::new(q.rotation(), q.translation())
                }
            };
            file.trajectory.poses.push(pose);
        }
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_text().as_bytes())
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(path, e))?;
    tmp.write_all(contents).map_err(|e| Error::io(path, e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}
