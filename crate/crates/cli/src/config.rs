//! Run configuration: a TOML file plus command-line overrides.

use std::path::{Path, PathBuf};

use ivrf_core::fields::{Kappa, Lex2Field, MonomialField, PAdicRationals};
use ivrf_core::{Error, Result};
use serde::Deserialize;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    /// Subcommand and its arguments, e.g. `["member", "1/x"]`.
    pub command: Option<Vec<String>>,
    pub field: Option<FieldSection>,
    pub domain: Option<DomainSection>,
    #[serde(default)]
    pub run: RunSection,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    pub variant: String,
    pub prime: Option<u64>,
    pub residue: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSection {
    pub kind: String,
    pub subfield: Option<String>,
    pub primes: Option<Vec<u64>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub seed: Option<u64>,
    pub depth: Option<u32>,
    pub samples: Option<usize>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub parallel: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn field_spec(&self) -> Result<Option<FieldSpec>> {
        self.field.as_ref().map(|f| FieldSpec::from_parts(&f.variant, f.prime, f.residue.as_deref())).transpose()
    }

    pub fn domain_spec(&self) -> Result<Option<DomainSpec>> {
        self.domain
            .as_ref()
            .map(|d| DomainSpec::from_parts(&d.kind, d.subfield.as_deref(), d.primes.as_deref()))
            .transpose()
    }
}

/// Which valued field `K` to work in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    PAdic(u64),
    TAdic(String),
    Hahn(String),
    Lex2(String),
}

pub fn parse_kappa(s: &str) -> Result<Kappa> {
    let bad = || Error::Config(format!("cannot parse residue field {s:?}; expected GF(q) or GF(q)(u)"));
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (head, rational) = match t.strip_suffix("(u)") {
        Some(h) => (h, true),
        None => (t.as_str(), false),
    };
    let q: u64 = head.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?.parse().map_err(|_| bad())?;
    let (p, k) = prime_power(q).ok_or_else(|| Error::Config(format!("{q} is not a prime power")))?;
    if rational {
        Kappa::rational(p, k)
    } else {
        Kappa::finite(p, k)
    }
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl FieldSpec {
    /// `padic:5`, `tadic:GF(4)`, `hahn:GF(2)(u)`, `lex2:GF(3)`.
    pub fn parse(s: &str) -> Result<Self> {
        let (variant, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("cannot parse field {s:?}; expected variant:argument")))?;
        match variant {
            "padic" => {
                let p = arg.trim().parse().map_err(|_| Error::Config(format!("bad prime {arg:?}")))?;
                Self::from_parts("padic", Some(p), None)
            }
            _ => Self::from_parts(variant, None, Some(arg)),
        }
    }

    pub fn from_parts(variant: &str, prime: Option<u64>, residue: Option<&str>) -> Result<Self> {
        let need_residue = || residue.map(str::to_string).ok_or_else(|| Error::Config(format!("{variant} needs a residue field")));
        let spec = match variant {
            "padic" => FieldSpec::PAdic(prime.ok_or_else(|| Error::Config("padic needs a prime".into()))?),
            "tadic" => FieldSpec::TAdic(need_residue()?),
            "hahn" => FieldSpec::Hahn(need_residue()?),
            "lex2" => FieldSpec::Lex2(need_residue()?),
            other => {
                return Err(Error::Config(format!("unknown field variant {other:?}; expected padic, tadic, hahn or lex2")))
            }
        };
        spec.build()?;
        Ok(spec)
    }

    pub fn build(&self) -> Result<AnyField> {
        Ok(match self {
            FieldSpec::PAdic(p) => AnyField::PAdic(PAdicRationals::new(*p)?),
            FieldSpec::TAdic(r) => AnyField::Monomial(MonomialField::t_adic(parse_kappa(r)?)),
            FieldSpec::Hahn(r) => AnyField::Monomial(MonomialField::hahn(parse_kappa(r)?)),
            FieldSpec::Lex2(r) => AnyField::Lex(Lex2Field::new(parse_kappa(r)?)),
        })
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::PAdic(p) => write!(f, "padic:{p}"),
            FieldSpec::TAdic(r) => write!(f, "tadic:{r}"),
            FieldSpec::Hahn(r) => write!(f, "hahn:{r}"),
            FieldSpec::Lex2(r) => write!(f, "lex2:{r}"),
        }
    }
}

pub enum AnyField {
    PAdic(PAdicRationals),
    Monomial(MonomialField),
    Lex(Lex2Field),
}

/// The coefficient domain `D` inside `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainSpec {
    Ring,
    Pvd(String),
    /// The `p`-adic valuation rings of `Q` for these primes, intersected.
    Intersection(Vec<u64>),
}

impl DomainSpec {
    /// `ring`, `pvd:GF(2)`, `intersection:2,3`.
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        match kind {
            "intersection" => {
                let primes = arg
                    .split(',')
                    .map(|p| p.trim().parse().map_err(|_| Error::Config(format!("bad prime {p:?}"))))
                    .collect::<Result<Vec<u64>>>()?;
                Self::from_parts(kind, None, Some(&primes))
            }
            _ => Self::from_parts(kind, (!arg.is_empty()).then_some(arg), None),
        }
    }

    pub fn from_parts(kind: &str, subfield: Option<&str>, primes: Option<&[u64]>) -> Result<Self> {
        match kind {
            "ring" => Ok(DomainSpec::Ring),
            "pvd" => Ok(DomainSpec::Pvd(
                subfield.ok_or_else(|| Error::Config("pvd needs a subfield such as GF(2)".into()))?.to_string(),
            )),
            "intersection" => match primes {
                Some(ps) if !ps.is_empty() => Ok(DomainSpec::Intersection(ps.to_vec())),
                _ => Err(Error::Config("intersection needs a list of primes".into())),
            },
            other => Err(Error::Config(format!("unknown domain kind {other:?}; expected ring, pvd or intersection"))),
        }
    }
}

impl std::fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DomainSpec::Ring => write!(f, "ring"),
            DomainSpec::Pvd(s) => write!(f, "pvd:{s}"),
            DomainSpec::Intersection(ps) => {
                let ps: Vec<String> = ps.iter().map(u64::to_string).collect();
                write!(f, "intersection:{}", ps.join(","))
            }
        }
    }
}
