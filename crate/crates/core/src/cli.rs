//! Command line front end. Every verb reads JSON (a path, or inline text
//! starting with `{` or `[`) and writes one JSON document.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::{Field, Matrix, Polynomial, Ring};
use crate::monideal::{MonomialIdeal, MonomialIdealJson};
use crate::retract::{
    brute_force_base, classification_report, enumerate_idempotents, enumerate_retracts, find_base,
    naive_idempotents, presentation, verify_base, verify_retract, RetractDatum, RetractJson,
};
use crate::simplicial::{ComplexJson, SimplicialComplex};
use crate::toric::{
    classify_retracts, defining_ideal, enumerate_restricted_subfans, is_restricted_by_generators, FanJson,
    MonoidalComplex,
};
use crate::varset::VarSet;

/// Largest `p^(n^2)` scanned by the naive idempotent oracle.
const MAX_NAIVE_MATRICES: u128 = 1 << 22;

#[derive(Debug, Parser)]
#[command(name = "monoretract", version, about = "Graded algebra retracts of monomial quotient rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Coefficient field, `Q` or `F<p>`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Total-degree bound for toric binomials.
    #[arg(long, global = true)]
    pub degree: Option<u32>,
    /// Largest ring size for idempotent enumeration.
    #[arg(long = "guard-n", global = true)]
    pub guard_n: Option<usize>,
    /// Cross-check against the brute-force counterpart.
    #[arg(long, global = true)]
    pub oracle: bool,
    /// Indented output.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Squarefree,
    Irreducible,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check idempotency and compatibility of a retract datum.
    VerifyRetract { input: String },
    /// Compute a base with the algorithm matching the ideal.
    FindBase { input: String },
    /// Certify a candidate base.
    VerifyBase {
        input: String,
        /// Comma-separated variable names.
        #[arg(long, default_value = "")]
        base: String,
    },
    /// Exhaustive search for a base.
    BruteBase { input: String },
    /// All compatible retracts of S/I over a prime field.
    Enumerate { input: String },
    /// Primary decomposition of a monomial ideal.
    Decompose {
        #[arg(long, value_enum)]
        mode: Mode,
        input: String,
    },
    /// Stanley-Reisner ideal of a complex, or the complex of a squarefree ideal.
    Sr { input: String },
    /// Restriction of a complex or ideal to a vertex subset.
    Restrict {
        input: String,
        #[arg(long)]
        vars: String,
    },
    /// Validate a monoidal complex and present its toric face ring.
    ToricPresent { input: String },
    /// Restricted subfans of a fan.
    RestrictedSubfans { input: String },
    /// Classify a retract datum by its base, or the multigraded retracts of a fan.
    Classify { input: String },
    /// Enumerate retracts of each ideal and compare algorithm and oracle.
    Census {
        #[arg(required = true)]
        inputs: Vec<String>,
    },
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    body: Value,
    code: i32,
}

impl Report {
    fn ok(body: Value) -> Self {
        Report { body, code: 0 }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli).and_then(|r| emit(&cli, r)) {
        Ok(o) => o,
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn emit(cli: &Cli, r: Report) -> Result<Outcome> {
    let mut text = if cli.pretty {
        serde_json::to_string_pretty(&r.body)
    } else {
        serde_json::to_string(&r.body)
    }
    .expect("JSON values serialize");
    text.push('\n');
    match &cli.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Ok(Outcome { code: r.code, stdout: String::new(), stderr: String::new() })
        }
        None => Ok(Outcome { code: r.code, stdout: text, stderr: String::new() }),
    }
}

fn read_value(input: &str) -> Result<Value> {
    let trimmed = input.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        input.to_string()
    } else {
        std::fs::read_to_string(input).map_err(|e| Error::Io(format!("{input}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{input}: {e}")))
}

fn parse_as<T: DeserializeOwned>(v: Value, what: &str) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Parse(format!("expected {what}: {e}")))
}

fn field_of(cli: &Cli, default: Field) -> Result<Field> {
    cli.field.as_deref().map_or(Ok(default), str::parse)
}

fn load_datum(cli: &Cli, input: &str) -> Result<RetractDatum> {
    let mut j: RetractJson = parse_as(read_value(input)?, "a retract datum")?;
    if let Some(f) = &cli.field {
        j.field = f.clone();
    }
    RetractDatum::from_json(&j)
}

fn load_fan(input: &str) -> Result<MonoidalComplex> {
    MonoidalComplex::from_json(&parse_as::<FanJson>(read_value(input)?, "a monoidal complex")?)
}

fn split_names(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(String::from).collect()
}

fn names_or_null(datum: &RetractDatum, w: Option<VarSet>) -> Value {
    w.map_or(Value::Null, |w| json!(datum.names(w)))
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()
}

fn dispatch(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::VerifyRetract { input } => {
            let d = load_datum(cli, input)?;
            let r = verify_retract(&d);
            let code = if r.holds() { 0 } else { 2 };
            Ok(Report { body: json!({"holds": r.holds(), "report": r}), code })
        }
        Command::FindBase { input } => find_base_cmd(cli, input),
        Command::VerifyBase { input, base } => {
            let d = load_datum(cli, input)?;
            let w = d.varset(&split_names(base))?;
            let cert = verify_base(&d, w)?;
            let mut body = json!(cert);
            if cli.oracle {
                body["oracle"] = json!({"brute_force_base": names_or_null(&d, brute_force_base(&d)?)});
            }
            Ok(Report::ok(body))
        }
        Command::BruteBase { input } => {
            let d = load_datum(cli, input)?;
            let w = brute_force_base(&d)?;
            let mut body = json!({"base": names_or_null(&d, w)});
            if cli.oracle {
                let found = find_base(&d)?;
                body["oracle"] = json!({
                    "find_base": d.names(found.base),
                    "agrees": w.is_some(),
                });
            }
            Ok(Report::ok(body))
        }
        Command::Enumerate { input } => enumerate_cmd(cli, input),
        Command::Decompose { mode, input } => decompose_cmd(cli, *mode, input),
        Command::Sr { input } => sr_cmd(cli, input),
        Command::Restrict { input, vars } => restrict_cmd(cli, input, &split_names(vars)),
        Command::ToricPresent { input } => {
            let m = load_fan(input)?;
            let validation = m.validate();
            let ideal = defining_ideal(&m, cli.degree)?;
            let mut body = json!({
                "validation": validation,
                "summary": ideal.summary(),
                "ideal": ideal.to_json(),
            });
            if cli.oracle {
                body["oracle"] = json!({"binomials_vanish": binomials_vanish(&m, ideal.binomials())});
            }
            Ok(Report::ok(body))
        }
        Command::RestrictedSubfans { input } => {
            let m = load_fan(input)?;
            let all = enumerate_restricted_subfans(&m)?;
            let names: Vec<Vec<String>> = all
                .iter()
                .map(|g| g.iter().map(|&c| m.cones()[c].name.clone()).collect())
                .collect();
            let mut body = json!({"count": names.len(), "subfans": names});
            if cli.oracle && m.is_geometric() {
                let agrees = all
                    .iter()
                    .map(|g| is_restricted_by_generators(&m, g))
                    .collect::<Result<Vec<_>>>()?
                    .into_iter()
                    .all(|b| b);
                body["oracle"] = json!({"generator_condition_agrees": agrees});
            }
            Ok(Report::ok(body))
        }
        Command::Classify { input } => {
            let v = read_value(input)?;
            if v.get("cones").is_some() {
                let m = MonoidalComplex::from_json(&parse_as(v, "a monoidal complex")?)?;
                let classes = classify_retracts(&m, cli.degree)?;
                let out: Vec<Value> = classes.iter().map(|c| json!(c.to_json())).collect();
                Ok(Report::ok(json!({"count": out.len(), "retracts": out})))
            } else {
                let d = load_datum(cli, input)?;
                let found = find_base(&d)?;
                let class = classification_report(&d, found.base)?;
                let pres = presentation(&d)?;
                Ok(Report::ok(json!({
                    "method": found.method,
                    "classification": class,
                    "presentation": pres.to_json(),
                })))
            }
        }
        Command::Census { inputs } => census_cmd(cli, inputs),
    }
}

fn find_base_cmd(cli: &Cli, input: &str) -> Result<Report> {
    let d = load_datum(cli, input)?;
    let found = find_base(&d)?;
    let mut body = json!({
        "base": d.names(found.base),
        "method": found.method,
        "fallback": found.fallback,
    });
    let mut code = 0;
    if cli.oracle {
        let oracle = brute_force_base(&d)?;
        let valid = verify_base(&d, found.base)?.valid;
        let agrees = valid && oracle.is_some();
        if !agrees {
            code = 3;
        }
        body["oracle"] = json!({"base": names_or_null(&d, oracle), "agrees": agrees});
    }
    Ok(Report { body, code })
}

fn load_ideal(input: &str) -> Result<MonomialIdeal> {
    MonomialIdeal::from_json(&parse_as::<MonomialIdealJson>(read_value(input)?, "a monomial ideal")?)
}

fn enumerate_cmd(cli: &Cli, input: &str) -> Result<Report> {
    let ideal = load_ideal(input)?;
    let field = field_of(cli, Field::Prime(2))?;
    let data = enumerate_retracts(&ideal, field, cli.guard_n)?;
    let retracts: Vec<Value> = data
        .iter()
        .map(|d| json!({"psi": matrix_strings(&d.matrix()), "rank": d.image_rank()}))
        .collect();
    let mut body = json!({
        "field": field.to_string(),
        "ring": ideal.vars(),
        "ideal": ideal.generator_strings(),
        "count": retracts.len(),
        "retracts": retracts,
    });
    if cli.oracle {
        let n = ideal.nvars();
        let p = u128::from(field.characteristic().max(2));
        let total = (0..n * n).try_fold(1u128, |acc, _| acc.checked_mul(p).filter(|&v| v <= MAX_NAIVE_MATRICES));
        if total.is_none() {
            return Err(Error::guard("matrices scanned by the naive oracle", MAX_NAIVE_MATRICES, u128::MAX));
        }
        let fast = enumerate_idempotents(field, n, cli.guard_n)?;
        let naive = naive_idempotents(field, n)?;
        let ring = Ring::new(ideal.vars(), field)?;
        let mut compatible = 0;
        for m in &naive {
            compatible += usize::from(verify_retract(&RetractDatum::from_matrix(&ring, ideal.clone(), m)?).holds());
        }
        body["oracle"] = json!({
            "idempotents": naive.len(),
            "compatible": compatible,
            "agrees": fast == naive && compatible == data.len(),
        });
    }
    Ok(Report::ok(body))
}

fn decompose_cmd(cli: &Cli, mode: Mode, input: &str) -> Result<Report> {
    let ideal = load_ideal(input)?;
    let components: Vec<MonomialIdeal> = match mode {
        Mode::Squarefree => {
            let vars = ideal.vars_arc();
            ideal
                .primary_decomposition_squarefree()?
                .iter()
                .map(|p| p.to_ideal(vars))
                .collect()
        }
        Mode::Irreducible => ideal.irreducible_decomposition()?,
    };
    let mut body = json!({
        "ring": ideal.vars(),
        "ideal": ideal.generator_strings(),
        "components": components.iter().map(|c| c.generator_strings()).collect::<Vec<_>>(),
    });
    if cli.oracle {
        let meet = MonomialIdeal::intersect_all(&components)?;
        body["oracle"] = json!({"intersection_matches": meet == ideal});
    }
    Ok(Report::ok(body))
}

fn sr_cmd(cli: &Cli, input: &str) -> Result<Report> {
    let v = read_value(input)?;
    if v.get("facets").is_some() {
        let c = SimplicialComplex::from_json(&parse_as::<ComplexJson>(v, "a simplicial complex")?)?;
        let ideal = c.stanley_reisner_ideal()?;
        let mut body = json!(ideal.to_json());
        if cli.oracle {
            let back = SimplicialComplex::complex_of_ideal(&ideal)?;
            body["oracle"] = json!({"round_trip": back.facet_names() == c.facet_names()});
        }
        Ok(Report::ok(body))
    } else {
        let ideal = load_ideal(input)?;
        let c = SimplicialComplex::complex_of_ideal(&ideal)?;
        Ok(Report::ok(json!(c.to_json())))
    }
}

fn restrict_cmd(cli: &Cli, input: &str, vars: &[String]) -> Result<Report> {
    let v = read_value(input)?;
    if v.get("facets").is_some() {
        let c = SimplicialComplex::from_json(&parse_as::<ComplexJson>(v, "a simplicial complex")?)?;
        let r = c.restriction_by_names(vars)?;
        let ideal = r.stanley_reisner_ideal()?;
        let mut body = json!({"complex": r.to_json(), "ideal": ideal.generator_strings()});
        if cli.oracle {
            let w = VarSet::from_names(c.vertices(), vars)?;
            let direct = c.stanley_reisner_ideal()?;
            let keep = VarSet::from_names(direct.vars(), &w.names(c.vertices()))?;
            body["oracle"] = json!({"matches_ideal_restriction": direct.restrict(keep)?.generator_strings() == ideal.generator_strings()});
        }
        Ok(Report::ok(body))
    } else {
        let ideal = load_ideal(input)?;
        let w = VarSet::from_names(ideal.vars(), vars)?;
        let r = ideal.restrict(w)?;
        Ok(Report::ok(json!(r.to_json())))
    }
}

/// Each binomial has equal lattice points on both terms.
fn binomials_vanish(m: &MonoidalComplex, binomials: &[Polynomial]) -> bool {
    let (Some(vs), Some(dim)) = (m.vectors(), m.dim()) else {
        return binomials.is_empty();
    };
    binomials.iter().all(|b| {
        let points: Vec<Vec<i64>> = b
            .terms()
            .keys()
            .map(|mono| {
                let mut p = vec![0i64; dim];
                for (i, &e) in mono.exps().iter().enumerate() {
                    for (c, a) in p.iter_mut().zip(&vs[i]) {
                        *c += i64::from(e) * a;
                    }
                }
                p
            })
            .collect();
        points.len() == 2 && points[0] == points[1]
    })
}

#[derive(Default, serde::Serialize)]
struct CensusRow {
    ring: Vec<String>,
    ideal: String,
    retracts: usize,
    bases_found: usize,
    verified: usize,
    oracle_bases: usize,
    agreements: usize,
    fallbacks: usize,
    failures: usize,
}

fn census_cmd(cli: &Cli, inputs: &[String]) -> Result<Report> {
    let field = field_of(cli, Field::Prime(2))?;
    let mut ideals = Vec::new();
    for input in inputs {
        match read_value(input)? {
            Value::Array(items) => {
                for item in items {
                    ideals.push(MonomialIdeal::from_json(&parse_as(item, "a monomial ideal")?)?);
                }
            }
            v => ideals.push(MonomialIdeal::from_json(&parse_as(v, "a monomial ideal")?)?),
        }
    }
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for ideal in &ideals {
        let mut row = CensusRow {
            ring: ideal.vars().to_vec(),
            ideal: ideal.to_string(),
            ..CensusRow::default()
        };
        for d in enumerate_retracts(ideal, field, cli.guard_n)? {
            row.retracts += 1;
            let oracle = brute_force_base(&d)?;
            row.oracle_bases += usize::from(oracle.is_some());
            match find_base(&d) {
                Ok(found) => {
                    row.bases_found += 1;
                    row.fallbacks += usize::from(found.fallback);
                    let valid = verify_base(&d, found.base)?.valid;
                    row.verified += usize::from(valid);
                    row.agreements += usize::from(valid && oracle.is_some());
                }
                Err(e @ (Error::Guard { .. } | Error::Precondition(_))) => return Err(e),
                Err(e) => {
                    row.failures += 1;
                    failures.push(json!({
                        "ideal": ideal.to_string(),
                        "psi": matrix_strings(&d.matrix()),
                        "error": e.to_string(),
                    }));
                    row.agreements += usize::from(oracle.is_none());
                }
            }
        }
        rows.push(row);
    }
    let total = |f: fn(&CensusRow) -> usize| rows.iter().map(f).sum::<usize>();
    let totals = json!({
        "instances": total(|r| r.retracts),
        "bases_found": total(|r| r.bases_found),
        "verified": total(|r| r.verified),
        "oracle_bases": total(|r| r.oracle_bases),
        "agreements": total(|r| r.agreements),
        "fallbacks": total(|r| r.fallbacks),
        "failures": total(|r| r.failures),
    });
    let code = if failures.is_empty() { 0 } else { 3 };
    Ok(Report {
        body: json!({"field": field.to_string(), "ideals": rows.len(), "totals": totals, "rows": rows, "failures": failures}),
        code,
    })
}
