//! Configuration: JSON file plus command-line overrides.
//!
//! File format:
//!
//! ```json
//! {
//!   "psi": { "L1": "2", "L2": "3", "I1": "5" },
//!   "xi": ["1", "1", "1", "1"],
//!   "bounds": { "degree": 3, "l0": 3, "zdeg": 2, "genIndex": 6 },
//!   "module": "reduced"
//! }
//! ```
//!
//! Rationals are `p/q` strings, never floats. Missing `psi` defaults to
//! `(2, 3, 5)`, missing `xi` to `(0, 0, 0, 0)`, missing bounds to
//! `degree=3, l0=3, zdeg=2, genIndex=6`, missing module to `universal`.

use std::path::Path;

use serde::Deserialize;

use hv_core::modules::{CentralCharacter, ModuleSpec, WhittakerMap};
use hv_core::rational::Rational;
use hv_core::solver::Bounds;
use hv_core::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ModuleKind {
    Universal,
    Reduced,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    psi: Option<PsiFile>,
    xi: Option<[String; 4]>,
    bounds: Option<BoundsFile>,
    module: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PsiFile {
    #[serde(rename = "L1")]
    l1: String,
    #[serde(rename = "L2")]
    l2: String,
    #[serde(rename = "I1")]
    i1: String,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct BoundsFile {
    degree: Option<u32>,
    l0: Option<u32>,
    zdeg: Option<u32>,
    #[serde(rename = "genIndex")]
    gen_index: Option<u32>,
}

/// Fully resolved configuration.
#[derive(Debug, Clone)]
pub struct Config {
    pub psi: WhittakerMap,
    pub xi: CentralCharacter,
    pub bounds: Bounds,
    pub module: ModuleKind,
}

fn parse_rational(text: &str) -> Result<Rational> {
    text.trim()
        .parse()
        .map_err(|_| Error::Usage(format!("invalid rational {text:?} (use p or p/q)")))
}

impl Config {
    pub fn load(
        path: Option<&Path>,
        module: Option<ModuleKind>,
        degree: Option<u32>,
        l0: Option<u32>,
        zdeg: Option<u32>,
        gen_index: Option<u32>,
    ) -> Result<Config> {
        let file: ConfigFile = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Error::Usage(format!("cannot read {}: {e}", p.display())))?;
                serde_json::from_str(&text)
                    .map_err(|e| Error::Usage(format!("invalid config {}: {e}", p.display())))?
            }
            None => ConfigFile::default(),
        };

        let psi = match file.psi {
            Some(p) => WhittakerMap::new(
                parse_rational(&p.l1)?,
                parse_rational(&p.l2)?,
                parse_rational(&p.i1)?,
            ),
            None => WhittakerMap::new(
                parse_rational("2")?,
                parse_rational("3")?,
                parse_rational("5")?,
            ),
        };

        let xi = match file.xi {
            Some(values) => {
                let mut parsed = Vec::with_capacity(4);
                for v in &values {
                    parsed.push(parse_rational(v)?);
                }
                CentralCharacter::new([
                    parsed[0].clone(),
                    parsed[1].clone(),
                    parsed[2].clone(),
                    parsed[3].clone(),
                ])
            }
            None => CentralCharacter::zero(),
        };

        let defaults = Bounds::default();
        let from_file = file.bounds.unwrap_or_default();
        let bounds = Bounds {
            degree: degree.or(from_file.degree).unwrap_or(defaults.degree),
            l0: l0.or(from_file.l0).unwrap_or(defaults.l0),
            zdeg: zdeg.or(from_file.zdeg).unwrap_or(defaults.zdeg),
            gen_index: gen_index
                .or(from_file.gen_index)
                .unwrap_or(defaults.gen_index),
        };

        let module = match module {
            Some(m) => m,
            None => match file.module.as_deref() {
                Some("universal") | None => ModuleKind::Universal,
                Some("reduced") => ModuleKind::Reduced,
                Some(other) => {
                    return Err(Error::Usage(format!(
                        "unknown module kind {other:?} (universal or reduced)"
                    )))
                }
            },
        };

        Ok(Config {
            psi,
            xi,
            bounds,
            module,
        })
    }

    pub fn spec(&self) -> Result<ModuleSpec> {
        match self.module {
            ModuleKind::Universal => ModuleSpec::universal(self.psi.clone()),
            ModuleKind::Reduced => ModuleSpec::reduced(self.psi.clone(), self.xi.clone()),
        }
    }
}
