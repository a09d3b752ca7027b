use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::DatasetError;

pub const MANIFEST_FILE: &str = "dataset.manifest";
pub const MANIFEST_HEADER: &str =
    "generationId\tframeIndex\tenvironmentId\tbeautyPath\tidPath\tpairPath";

/// One synthesized tuple. Paths are relative to the dataset directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRecord {
    pub generation_id: usize,
    pub frame_index: usize,
    pub environment_id: u32,
    pub beauty_path: String,
    pub id_path: String,
    pub pair_path: String,
}

impl PairRecord {
    pub fn paths(&self, dir: &Path) -> [PathBuf; 3] {
        [
            dir.join(&self.beauty_path),
            dir.join(&self.id_path),
            dir.join(&self.pair_path),
        ]
    }

    pub fn key(&self) -> (usize, usize, u32) {
        (self.generation_id, self.frame_index, self.environment_id)
    }
}

/// Line format: spec fingerprint, header, then one tab-separated record
/// per line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub fingerprint: String,
    pub records: Vec<PairRecord>,
}

impl Manifest {
    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n{MANIFEST_HEADER}\n", self.fingerprint);
        for r in &self.records {
            let _ = writeln!(
                s,
                "{}\t{}\t{}\t{}\t{}\t{}",
                r.generation_id, r.frame_index, r.environment_id, r.beauty_path, r.id_path, r.pair_path
            );
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, DatasetError> {
        let bad = |m: String| DatasetError::Manifest(m);
        let mut lines = text.lines();
        let fingerprint = lines
            .next()
            .filter(|l| !l.is_empty())
            .ok_or_else(|| bad("missing fingerprint line".into()))?
            .to_owned();
        if lines.next() != Some(MANIFEST_HEADER) {
            return Err(bad("missing or unexpected header".into()));
        }
        let records = lines
            .enumerate()
            .map(|(i, line)| {
                let f: Vec<&str> = line.split('\t').collect();
                if f.len() != 6 {
                    return Err(bad(format!("record {}: expected 6 fields", i + 1)));
                }
                let num = |s: &str| {
                    s.parse::<usize>()
                        .map_err(|_| bad(format!("record {}: `{s}` is not a number", i + 1)))
                };
                Ok(PairRecord {
                    generation_id: num(f[0])?,
                    frame_index: num(f[1])?,
                    environment_id: num(f[2])? as u32,
                    beauty_path: f[3].to_owned(),
                    id_path: f[4].to_owned(),
                    pair_path: f[5].to_owned(),
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            fingerprint,
            records,
        })
    }

    pub fn write(&self, path: &Path) -> Result<(), DatasetError> {
        fs::write(path, self.to_text()).map_err(|source| DatasetError::Io {
            path: path.to_owned(),
            source,
        })
    }

    pub fn read(path: &Path) -> Result<Self, DatasetError> {
        let text = fs::read_to_string(path).map_err(|source| DatasetError::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let m = Manifest {
            fingerprint: "abc123".into(),
            records: vec![PairRecord {
                generation_id: 3,
                frame_index: 17,
                environment_id: 2,
                beauty_path: "g003_f0017_e02_beauty.png".into(),
                id_path: "g003_f0017_e02_id.png".into(),
                pair_path: "g003_f0017_e02_pair.png".into(),
            }],
        };
        let text = m.to_text();
        assert!(text.starts_with("abc123\ngenerationId\t"));
        assert_eq!(Manifest::parse(&text).unwrap(), m);
    }

    #[test]
    fn rejects_malformed() {
        assert!(Manifest::parse("").is_err());
        assert!(Manifest::parse("fp\nwrong header\n").is_err());
        assert!(Manifest::parse(&format!("fp\n{MANIFEST_HEADER}\n1\t2\n")).is_err());
    }
}
