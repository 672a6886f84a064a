//! Case configuration: presets, `key = value` files and flag overrides.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use heckendo::endosolve::DEFAULT_ORACLE_CAP;
use heckendo::polyring::{CharacterLattice, CoefficientRing, LatticePreset};
use heckendo::rootsys::{CosetSystem, RootSystem, TypeLabel};
use heckendo::{Error, Result};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeChoice {
    Preset(LatticePreset),
    File(PathBuf),
}

impl LatticeChoice {
    pub fn parse(s: &str) -> Self {
        match s.parse::<LatticePreset>() {
            Ok(p) => LatticeChoice::Preset(p),
            Err(_) => LatticeChoice::File(PathBuf::from(s)),
        }
    }

    pub fn label(&self) -> String {
        match self {
            LatticeChoice::Preset(p) => p.name().to_string(),
            LatticeChoice::File(p) => p.display().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseConfig {
    pub preset: Option<String>,
    pub type_label: TypeLabel,
    pub rank: usize,
    /// 1-based nodes generating `W_P`.
    pub parabolic: Vec<usize>,
    pub lattice: LatticeChoice,
    pub ring: CoefficientRing,
    pub congruence: bool,
    pub oracle: bool,
    pub oracle_cap: usize,
    pub localized: bool,
    pub out: Option<PathBuf>,
}

impl Default for CaseConfig {
    /// The projective plane mod 3.
    fn default() -> Self {
        CaseConfig {
            preset: None,
            type_label: TypeLabel::A,
            rank: 2,
            parabolic: vec![2],
            lattice: LatticeChoice::Preset(LatticePreset::Root),
            ring: CoefficientRing::PrimeField(3),
            congruence: true,
            oracle: false,
            oracle_cap: DEFAULT_ORACLE_CAP,
            localized: false,
            out: None,
        }
    }
}

pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub type_label: TypeLabel,
    pub rank: usize,
    pub parabolic: &'static [usize],
    pub lattice: LatticePreset,
    pub prime: u64,
}

pub const PRESETS: [Preset; 5] = [
    Preset {
        name: "projective",
        description: "projective space P^n: A_n root lattice, P = <s2..sn> (override --rank, --prime)",
        type_label: TypeLabel::A,
        rank: 3,
        parabolic: &[2, 3],
        lattice: LatticePreset::Root,
        prime: 2,
    },
    Preset {
        name: "klein",
        description: "Klein quadric: A3, P = <s1,s3>, lattice <a1,a2,w2>, p = 2",
        type_label: TypeLabel::A,
        rank: 3,
        parabolic: &[1, 3],
        lattice: LatticePreset::A3Omega2,
        prime: 2,
    },
    Preset {
        name: "pgo8",
        description: "6-dimensional quadric, adjoint: D4 root lattice, P = <s2,s3,s4>, p = 2",
        type_label: TypeLabel::D,
        rank: 4,
        parabolic: &[2, 3, 4],
        lattice: LatticePreset::Root,
        prime: 2,
    },
    Preset {
        name: "so8",
        description: "6-dimensional quadric: D4 lattice with w1, P = <s2,s3,s4>, p = 2",
        type_label: TypeLabel::D,
        rank: 4,
        parabolic: &[2, 3, 4],
        lattice: LatticePreset::D4So8,
        prime: 2,
    },
    Preset {
        name: "hspin8",
        description: "involution variety: D4 lattice with w4, P = <s2,s3,s4>, p = 2",
        type_label: TypeLabel::D,
        rank: 4,
        parabolic: &[2, 3, 4],
        lattice: LatticePreset::D4HSpin8,
        prime: 2,
    },
];

pub fn find_preset(name: &str) -> Result<&'static Preset> {
    PRESETS
        .iter()
        .find(|p| p.name.eq_ignore_ascii_case(name.trim()))
        .ok_or_else(|| Error::Config(format!("unknown preset {name:?}")))
}

/// `Z`, `0`, or a prime.
pub fn parse_ring(s: &str) -> Result<CoefficientRing> {
    match s.trim() {
        "Z" | "z" | "0" | "integers" => Ok(CoefficientRing::Integers),
        v => {
            let p: u64 = v
                .parse()
                .map_err(|_| Error::Config(format!("bad coefficient ring {v:?}")))?;
            CoefficientRing::prime_field(p)
        }
    }
}

/// Comma separated 1-based nodes; empty means the Borel subgroup.
pub fn parse_nodes(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let n: usize = part
            .parse()
            .map_err(|_| Error::Config(format!("bad node {part:?}")))?;
        if n == 0 {
            return Err(Error::Config("nodes are numbered from 1".into()));
        }
        out.push(n);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_bool(s: &str) -> Result<bool> {
    match s.trim().to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        v => Err(Error::Config(format!("bad boolean {v:?}"))),
    }
}

impl CaseConfig {
    pub fn apply_preset(&mut self, name: &str) -> Result<()> {
        let p = find_preset(name)?;
        self.preset = Some(p.name.to_string());
        self.type_label = p.type_label;
        self.rank = p.rank;
        self.parabolic = p.parabolic.to_vec();
        self.lattice = LatticeChoice::Preset(p.lattice);
        self.ring = CoefficientRing::PrimeField(p.prime);
        Ok(())
    }

    /// Sets one option by key. Keys match the long flag names.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.trim().replace('_', "-").as_str() {
            "preset" => self.apply_preset(value)?,
            "type" => self.type_label = value.parse()?,
            "rank" => {
                self.rank = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("bad rank {value:?}")))?;
                if self.preset.as_deref() == Some("projective") {
                    self.parabolic = (2..=self.rank).collect();
                }
            }
            "parabolic" => self.parabolic = parse_nodes(value)?,
            "lattice" => self.lattice = LatticeChoice::parse(value.trim()),
            "prime" | "coefficient" => self.ring = parse_ring(value)?,
            "congruence" => self.congruence = parse_bool(value)?,
            "oracle" => self.oracle = parse_bool(value)?,
            "oracle-cap" => {
                self.oracle_cap = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("bad oracle cap {value:?}")))?
            }
            "localized" => self.localized = parse_bool(value)?,
            "out" => self.out = Some(PathBuf::from(value.trim())),
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Applies a `key = value` file. A `preset` line is applied first so the
    /// other lines refine it.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        let mut pairs = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("expected key = value, got {line:?}")))?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        pairs.sort_by_key(|(k, _)| k != "preset");
        for (k, v) in pairs {
            self.set(&k, &v)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        self.apply_text(&std::fs::read_to_string(path)?)
    }

    pub fn root_system(&self) -> Result<Arc<RootSystem>> {
        Ok(Arc::new(RootSystem::new(self.type_label, self.rank)?))
    }

    pub fn lattice(&self, rs: &RootSystem) -> Result<CharacterLattice> {
        match &self.lattice {
            LatticeChoice::Preset(p) => CharacterLattice::preset(*p, rs),
            LatticeChoice::File(path) => CharacterLattice::from_text(&std::fs::read_to_string(path)?, rs),
        }
    }

    pub fn build(&self) -> Result<(CosetSystem, CharacterLattice)> {
        let rs = self.root_system()?;
        let lat = self.lattice(&rs)?;
        let nodes: Vec<usize> = self.parabolic.iter().map(|n| n - 1).collect();
        Ok((CosetSystem::new(rs, &nodes)?, lat))
    }

    pub fn prime(&self) -> Option<u64> {
        match self.ring {
            CoefficientRing::PrimeField(p) => Some(p),
            CoefficientRing::Integers => None,
        }
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            preset: self.preset.clone(),
            type_label: self.type_label.to_string(),
            rank: self.rank,
            parabolic: self.parabolic.clone(),
            lattice: self.lattice.label(),
            coefficient: self.ring.to_string(),
            congruence: self.congruence,
            oracle: self.oracle,
            oracle_cap: self.oracle_cap,
            localized: self.localized,
        }
    }
}

/// The configuration as it appears in reports. The output path is left out
/// so that reports do not depend on where they are written.
#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub preset: Option<String>,
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    pub parabolic: Vec<usize>,
    pub lattice: String,
    pub coefficient: String,
    pub congruence: bool,
    pub oracle: bool,
    pub oracle_cap: usize,
    pub localized: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let mut c = CaseConfig::default();
        c.apply_text("prime = 5\n# comment\npreset = hspin8\noracle = yes\n").unwrap();
        assert_eq!(c.rank, 4);
        assert_eq!(c.ring, CoefficientRing::PrimeField(5));
        assert!(c.oracle);
        c.set("prime", "2").unwrap();
        assert_eq!(c.ring, CoefficientRing::PrimeField(2));
    }

    #[test]
    fn projective_rank_moves_parabolic() {
        let mut c = CaseConfig::default();
        c.apply_preset("projective").unwrap();
        c.set("rank", "5").unwrap();
        assert_eq!(c.parabolic, vec![2, 3, 4, 5]);
    }

    #[test]
    fn bad_values() {
        let mut c = CaseConfig::default();
        assert!(c.set("prime", "4").is_err());
        assert!(c.set("parabolic", "0,1").is_err());
        assert!(c.set("colour", "red").is_err());
        assert!(c.apply_text("no equals sign").is_err());
        assert!(find_preset("e8").is_err());
    }
}
