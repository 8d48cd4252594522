//! Experiment description and its `key = value` config file.
//!
//! ```text
//! # comments start with '#'
//! models = er, nws, ba_tf, file
//! sizes = 1000, 2000, 5000, 10000, 15000
//! er.p = 0.01
//! nws.k = 6
//! nws.p = 0.6
//! ba_tf.e = 5
//! ba_tf.p = 0.3
//! repetitions = 5
//! seed = 42
//! files = data/dolphins.gml, data/hep-th.gml
//! weighted_mode = use_weights        # or: binarize
//! got.thieves = 1
//! got.vdiamonds = auto               # or an integer
//! got.epochs = auto                  # or an integer
//! workers = 0                        # 0: one per core
//! write_centralities = true
//! out_dir = results
//! ```
//!
//! Relative `files` and `out_dir` entries resolve against the config file's directory.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::generators::Model;
use crate::got::GotConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelChoice {
    Generated(Model),
    File,
}

impl ModelChoice {
    /// Stable code used in seed derivation.
    pub fn code(self) -> u64 {
        match self {
            ModelChoice::Generated(Model::Er) => 0,
            ModelChoice::Generated(Model::Nws) => 1,
            ModelChoice::Generated(Model::BaTf) => 2,
            ModelChoice::File => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelChoice::Generated(m) => m.name(),
            ModelChoice::File => "file",
        }
    }
}

impl FromStr for ModelChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "file" => Ok(ModelChoice::File),
            other => other.parse().map(ModelChoice::Generated),
        }
    }
}

impl fmt::Display for ModelChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How edge weights of file inputs reach the simulation. Classical measures
/// always see the binarized graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightedMode {
    #[default]
    UseWeights,
    Binarize,
}

impl FromStr for WeightedMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "use_weights" => Ok(WeightedMode::UseWeights),
            "binarize" => Ok(WeightedMode::Binarize),
            other => Err(Error::InvalidParameter(format!(
                "unknown weighted_mode {other:?}"
            ))),
        }
    }
}

impl fmt::Display for WeightedMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightedMode::UseWeights => "use_weights",
            WeightedMode::Binarize => "binarize",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub models: Vec<ModelChoice>,
    pub sizes: Vec<usize>,
    pub files: Vec<PathBuf>,
    pub er_p: f64,
    pub nws_k: usize,
    pub nws_p: f64,
    pub ba_e: usize,
    pub ba_p: f64,
    pub repetitions: usize,
    /// Simulation parameters; the seed field is replaced per cell.
    pub got: GotConfig,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub weighted_mode: WeightedMode,
    /// Worker threads for independent cells; 0 uses one per core.
    pub workers: usize,
    pub write_centralities: bool,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        ExperimentSpec {
            models: vec![
                ModelChoice::Generated(Model::Er),
                ModelChoice::Generated(Model::Nws),
                ModelChoice::Generated(Model::BaTf),
            ],
            sizes: vec![1000, 2000, 5000, 10000, 15000],
            files: Vec::new(),
            er_p: 0.01,
            nws_k: 6,
            nws_p: 0.6,
            ba_e: 5,
            ba_p: 0.3,
            repetitions: 5,
            got: GotConfig::default(),
            seed: 0,
            out_dir: PathBuf::from("results"),
            weighted_mode: WeightedMode::UseWeights,
            workers: 0,
            write_centralities: true,
        }
    }
}

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::parse(line, msg)
}

fn parse_value<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| bad(line, format!("invalid value {value:?} for `{key}`")))
}

fn parse_list<T: FromStr>(line: usize, key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_value(line, key, s))
        .collect()
}

fn parse_auto<T: FromStr>(line: usize, key: &str, value: &str) -> Result<Option<T>> {
    if value == "auto" {
        Ok(None)
    } else {
        parse_value(line, key, value).map(Some)
    }
}

impl ExperimentSpec {
    /// Parses config text. Unset keys keep their defaults; relative paths are
    /// joined onto `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let mut spec = ExperimentSpec::default();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| bad(line, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "models" => {
                    spec.models = value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(|s| s.parse().map_err(|e: Error| bad(line, e.to_string())))
                        .collect::<Result<_>>()?
                }
                "sizes" => spec.sizes = parse_list(line, key, value)?,
                "files" => {
                    spec.files = value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(|s| base_dir.join(s))
                        .collect()
                }
                "er.p" => spec.er_p = parse_value(line, key, value)?,
                "nws.k" => spec.nws_k = parse_value(line, key, value)?,
                "nws.p" => spec.nws_p = parse_value(line, key, value)?,
                "ba_tf.e" => spec.ba_e = parse_value(line, key, value)?,
                "ba_tf.p" => spec.ba_p = parse_value(line, key, value)?,
                "repetitions" => spec.repetitions = parse_value(line, key, value)?,
                "seed" => spec.seed = parse_value(line, key, value)?,
                "weighted_mode" => {
                    spec.weighted_mode =
                        value.parse().map_err(|e: Error| bad(line, e.to_string()))?
                }
                "got.thieves" => spec.got.thieves_per_vertex = parse_value(line, key, value)?,
                "got.vdiamonds" => spec.got.initial_vdiamonds = parse_auto(line, key, value)?,
                "got.epochs" => spec.got.epochs = parse_auto(line, key, value)?,
                "workers" => spec.workers = parse_value(line, key, value)?,
                "write_centralities" => spec.write_centralities = parse_value(line, key, value)?,
                "out_dir" => spec.out_dir = base_dir.join(value),
                other => return Err(bad(line, format!("unknown key `{other}`"))),
            }
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base)
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |m: String| Err(Error::InvalidParameter(m));
        if self.models.is_empty() {
            return invalid("no models selected".into());
        }
        if self.repetitions == 0 {
            return invalid("repetitions must be positive".into());
        }
        if self.got.thieves_per_vertex == 0 {
            return invalid("got.thieves must be positive".into());
        }
        if self.got.epochs == Some(0) {
            return invalid("got.epochs must be positive".into());
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("sizes must be strictly ascending".into());
        }
        let generated = self
            .models
            .iter()
            .any(|m| matches!(m, ModelChoice::Generated(_)));
        if generated && self.sizes.is_empty() {
            return invalid("generated models need at least one size".into());
        }
        if self.models.contains(&ModelChoice::File) && self.files.is_empty() {
            return invalid("model `file` needs a `files` entry".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_the_protocol() {
        let spec = ExperimentSpec::default();
        assert_eq!(spec.sizes, vec![1000, 2000, 5000, 10000, 15000]);
        assert_eq!(
            (spec.er_p, spec.nws_k, spec.nws_p, spec.ba_e, spec.ba_p),
            (0.01, 6, 0.6, 5, 0.3)
        );
        assert_eq!(spec.repetitions, 5);
        assert_eq!(spec.got, GotConfig::default());
        assert_eq!(spec.models.len() * spec.sizes.len(), 15);
    }

    #[test]
    fn parses_every_key() {
        let text = "\
# reduced run
models = ba_tf, file
sizes = 500, 1000   # trailing comment
files = nets/dolphins.gml
er.p = 0.02
nws.k = 4
nws.p = 0.5
ba_tf.e = 3
ba_tf.p = 0.1
repetitions = 2
seed = 99
weighted_mode = binarize
got.thieves = 2
got.vdiamonds = 7
got.epochs = auto
workers = 3
write_centralities = false
out_dir = out
";
        let spec = ExperimentSpec::parse(text, Path::new("/cfg")).unwrap();
        assert_eq!(
            spec.models,
            vec![ModelChoice::Generated(Model::BaTf), ModelChoice::File]
        );
        assert_eq!(spec.sizes, vec![500, 1000]);
        assert_eq!(spec.files, vec![PathBuf::from("/cfg/nets/dolphins.gml")]);
        assert_eq!(
            (spec.er_p, spec.nws_k, spec.nws_p, spec.ba_e, spec.ba_p),
            (0.02, 4, 0.5, 3, 0.1)
        );
        assert_eq!((spec.repetitions, spec.seed, spec.workers), (2, 99, 3));
        assert_eq!(spec.weighted_mode, WeightedMode::Binarize);
        assert_eq!(spec.got.thieves_per_vertex, 2);
        assert_eq!(spec.got.initial_vdiamonds, Some(7));
        assert_eq!(spec.got.epochs, None);
        assert!(!spec.write_centralities);
        assert_eq!(spec.out_dir, PathBuf::from("/cfg/out"));
    }

    #[test]
    fn rejects_bad_config() {
        let base = Path::new(".");
        for (text, line) in [
            ("sizes = 10, x", 1),
            ("\nmodels = er, ws", 2),
            ("bogus = 1", 1),
            ("no equals sign", 1),
        ] {
            match ExperimentSpec::parse(text, base) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(ExperimentSpec::parse("sizes = 2000, 1000", base).is_err());
        assert!(ExperimentSpec::parse("repetitions = 0", base).is_err());
        assert!(ExperimentSpec::parse("models = file", base).is_err());
    }
}
