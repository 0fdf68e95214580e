//! `construct`, `scan` and `verify`.

use ivrf_core::constructions::{
    build_psi, build_rho, build_separator, build_theta, field_map_scan, notlocal_witness, psi_identity, theta_is_symmetric,
    verify_notlocal, verify_psi, verify_rho, verify_separator, verify_theta, SingularData,
};
use ivrf_core::fields::{PAdicRationals, Pvd, SubfieldSpec, ValuedField};
use ivrf_core::par::Mode;
use ivrf_core::ratfun::RationalFunctionReport;
use ivrf_core::report::CheckReport;
use ivrf_core::suites::{self, grid, sample_rng, Suite, SuiteConfig};
use ivrf_core::{Error, Result};
use serde_json::json;

use crate::commands::{function, Output};
use crate::config::{parse_kappa, DomainSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    Theta,
    Psi,
    Rho,
    Separator,
    Witness,
}

pub struct ConstructArgs<'a> {
    pub kind: Kind,
    pub preset: &'a str,
    pub phi: &'a str,
    pub phi2: &'a str,
    pub samples: usize,
    pub depth: u32,
    pub seed: u64,
    pub mode: Mode,
}

fn checks_json(checks: &[CheckReport]) -> (serde_json::Value, bool) {
    let bad = checks.iter().any(|c| !c.passed());
    (serde_json::to_value(checks).expect("reports serialize"), bad)
}

/// `θ`, `ψ`, `ρ` and the separator over a singular-data preset of `Q`.
pub fn singular(a: &ConstructArgs) -> Result<Output> {
    let s = SingularData::<PAdicRationals>::preset(a.preset)?;
    let k = s.field().clone();
    let bound = (a.samples as f64).sqrt().ceil().max(1.0) as i64;
    let points = grid(bound);
    let text = |f: &_| RationalFunctionReport::new(&k, f, "x");
    let (f, checks) = match a.kind {
        Kind::Theta => {
            let theta = build_theta(&s);
            let mut sym = CheckReport::new("theta(1/x) = theta(x)");
            sym.check(theta_is_symmetric(&s)?, "symmetry", || "1/x".into(), || "not symmetric".into());
            (theta, vec![verify_theta(&s, &points, a.mode), sym])
        }
        Kind::Psi => {
            let phi = function(&k, a.phi)?;
            let psi = build_psi(&phi, &s)?;
            let mut id = CheckReport::new("phi^n (1 - phi^n psi) = t psi");
            id.check(psi_identity(&phi, &psi, &s), "identity", || a.phi.into(), || "identity fails".into());
            (psi, vec![id, verify_psi(&phi, &s, &points, a.mode)?])
        }
        Kind::Rho => {
            let (p1, p2) = (function(&k, a.phi)?, function(&k, a.phi2)?);
            (build_rho(&p1, &p2, &s)?, vec![verify_rho(&p1, &p2, &s, &points, a.mode)?])
        }
        Kind::Separator => {
            let phi = function(&k, a.phi)?;
            (build_separator(&phi, &s)?, vec![verify_separator(&phi, &s, &points, a.mode)?])
        }
        Kind::Witness => unreachable!("witnesses are built by `witness`"),
    };
    let (checks, violation) = checks_json(&checks);
    let body = json!({
        "field": k.describe(),
        "singular_data": s.describe(),
        "function": text(&f),
        "checks": checks,
    });
    Ok(Output { body, csv: None, violation })
}

/// The non-locality witness for a pseudovaluation domain.
pub fn witness<V: ValuedField>(k: &V, d: &DomainSpec, a: &ConstructArgs) -> Result<Output> {
    let DomainSpec::Pvd(sub) = d else {
        return Err(Error::Config("witness needs a pvd domain, e.g. --domain pvd:GF(2)".into()));
    };
    let pvd = Pvd::new(k.clone(), SubfieldSpec::parse(k.residue_field(), sub)?);
    let w = notlocal_witness(&pvd)?;
    let samples: Vec<_> = (0..a.samples).map(|i| k.random_element(&mut sample_rng(a.seed, i), 3)).collect();
    let rep = verify_notlocal(&pvd, &w, &samples, a.depth, a.mode)?;
    let violation = !rep.passed();
    let body = json!({
        "field": k.describe(),
        "domain": pvd.describe(),
        "function": RationalFunctionReport::new(k, &w.witness, "x"),
        "result": rep,
    });
    Ok(Output { body, csv: None, violation })
}

pub fn scan(residue: &str, subfield: Option<&str>, bound: usize, exceptions: usize, mode: Mode) -> Result<Output> {
    let l = parse_kappa(residue)?;
    let m = match subfield {
        Some(s) => SubfieldSpec::parse(&l, s)?,
        None => SubfieldSpec::whole(&l),
    };
    let rep = field_map_scan(&l, &m, bound, exceptions, mode)?;
    let mut csv = String::from("function,exceptions,is_constant,values\n");
    for f in &rep.found {
        csv.push_str(&format!("\"{}\",\"{}\",{},\"{}\"\n", f.function, f.exceptions.join(";"), f.is_constant, f.values.join(";")));
    }
    let body = json!({ "source": l.describe(), "target": m.describe(&l), "result": rep });
    Ok(Output { body, csv: Some(csv), violation: false })
}

pub fn verify(suite: Suite, cfg: &SuiteConfig) -> Result<Output> {
    let rep = suites::run(suite, cfg)?;
    let mut csv = String::from("check,checked,skipped,violations\n");
    for c in &rep.checks {
        csv.push_str(&format!("\"{}\",{},{},{}\n", c.name, c.checked, c.skipped, c.violations));
    }
    let violation = !rep.passed;
    Ok(Output { body: serde_json::to_value(&rep).expect("reports serialize"), csv: Some(csv), violation })
}
