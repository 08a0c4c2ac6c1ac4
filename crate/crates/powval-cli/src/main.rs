//! Command line for the powval library: one subcommand per operation family,
//! JSON records on stdout (one object per line) or flattened CSV.
//!
//! Exit codes: 0 success, 2 validation or usage error, 3 budget exhaustion.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use powval::arith::Budget;
use powval::bounds::{compute_bounds, key_inequality_check, BoundInputs};
use powval::error::Error;
use powval::explorer::{
    count_points, enumerate_points, search_polynomials, EnumerationBudget, SearchBox,
};
use powval::field::field_invariants;
use powval::heights::{
    check_discriminant_bounds, element_height, height_polynomial, mahler_measure,
    AlgebraicNumber, ProjectivePoint,
};
use powval::nevanlinna::{decompose, decompose_algebraic, PlaceSet, VojtaForm};
use powval::parse;
use powval::powerful::{
    canonical_representative, is_powerful_element, is_powerful_polynomial,
    squarefree_decomposition,
};
use powval::sequences::{
    derived_sequence, detect_period, extension_lemma_check, inversion_transform,
    scale_transform, shift_transform, transform_value_identity_check, DerivedKind,
};
use powval::zeta::dedekind_zeta;
use powval::NumberField;

#[derive(Parser)]
#[command(name = "powval", version, about = "Heights, powerful values and point counting")]
struct Cli {
    /// Base field literal: Q or Q(sqrt,<d>).
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Numeric target precision for zeta values and Mahler measures.
    #[arg(long, global = true, default_value_t = 1e-9)]
    precision: f64,
    /// Seed for the factorization randomizer (reproducible runs).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Budget guard: maximum enumerated points / search candidates.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormArg {
    Original,
    Counting,
    Truncated,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Differences,
    Ratios,
    ReciprocalDifferences,
}

impl From<KindArg> for DerivedKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Differences => DerivedKind::Differences,
            KindArg::Ratios => DerivedKind::Ratios,
            KindArg::ReciprocalDifferences => DerivedKind::ReciprocalDifferences,
        }
    }
}

#[derive(Args)]
struct AlphaArgs {
    /// Evaluation point as a field element literal.
    #[arg(long, conflicts_with = "min_poly", allow_hyphen_values = true)]
    alpha: Option<String>,
    /// Degree-2 evaluation point: minimal polynomial coefficients c0,c1,c2.
    #[arg(long, allow_hyphen_values = true)]
    min_poly: Option<String>,
    /// Root index (canonical order) when --min-poly is used.
    #[arg(long, default_value_t = 0)]
    root: u8,
}

#[derive(Subcommand)]
enum Command {
    /// Discriminant, signature, class number, regulator, roots of unity.
    FieldInfo,
    /// Dedekind zeta value at an integer s >= 2.
    Zeta {
        #[arg(short = 's', long)]
        s: u32,
    },
    /// Heights of an element, a polynomial or a projective point.
    Height {
        /// Element literal.
        #[arg(allow_hyphen_values = true)]
        value: Option<String>,
        /// Polynomial literal c0,c1,...,cd.
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        /// Projective point as colon-separated element literals.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Mahler measure of a polynomial.
    Mahler {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// s-powerful test for an element or polynomial.
    Powerful {
        #[arg(short = 's', long)]
        s: u32,
        /// Element literal.
        #[arg(allow_hyphen_values = true)]
        value: Option<String>,
        /// Polynomial literal.
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// Squarefree decomposition of a polynomial.
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Also report the canonical representative modulo s-th powers.
        #[arg(short = 's', long)]
        s: Option<u32>,
    },
    /// Proximity / counting / truncated counting report.
    Nevanlinna {
        #[command(flatten)]
        alpha: AlphaArgs,
        /// Comma-separated rational targets.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        targets: String,
        /// Rational primes whose places join S (infinite places always do).
        #[arg(long, default_value = "")]
        s_primes: String,
    },
    /// Evaluate one of the Vojta-type inequalities.
    Vojta {
        #[command(flatten)]
        alpha: AlphaArgs,
        #[arg(long, allow_hyphen_values = true)]
        targets: String,
        #[arg(long)]
        eps: f64,
        #[arg(short = 'c', long, default_value_t = 0.0)]
        c: f64,
        #[arg(short = 'd', long, default_value_t = 2)]
        degree_bound: u32,
        #[arg(long, value_enum, default_value_t = FormArg::Truncated)]
        form: FormArg,
        #[arg(long, default_value = "")]
        s_primes: String,
    },
    /// The full constant chain for (r, s) over a prefix of M(r,s) terms.
    Bounds {
        #[arg(short = 'r', long)]
        r: u32,
        #[arg(short = 's', long)]
        s: u32,
        /// Sequence shorthand arith:a:n, geom:a:q:n or file:<path>.
        #[arg(long, allow_hyphen_values = true)]
        sequence: String,
        #[arg(long, default_value = "")]
        s_primes: String,
        #[arg(long, default_value_t = 0)]
        n_exceptional: u64,
        #[arg(long, default_value_t = 0.0)]
        c5: f64,
        #[arg(long, default_value_t = 0.0)]
        c6: f64,
        /// Subtract the lower-bound O-term instead of adding it.
        #[arg(long)]
        subtract_o_term: bool,
    },
    /// Exhaustive key-inequality check for (r, s).
    KeyInequality {
        #[arg(short = 'r', long)]
        r: u32,
        #[arg(short = 's', long)]
        s: u32,
    },
    /// Count bounded-height points of degree 1 or 2 against the density band.
    Count {
        #[arg(long, default_value_t = 1)]
        degree: u32,
        /// Multiplicative height cap.
        #[arg(short = 'X', long, allow_hyphen_values = true)]
        height_cap: String,
        #[arg(long, default_value_t = 0.0)]
        c5: f64,
        #[arg(long, default_value_t = 0.0)]
        c6: f64,
        /// Also list the points.
        #[arg(long)]
        list: bool,
    },
    /// Search a coefficient box for polynomials with s-powerful values.
    Search {
        #[arg(short = 'r', long)]
        r: u32,
        #[arg(short = 's', long)]
        s: u32,
        /// Prefix shorthand (arith:, geom: or file:).
        #[arg(long, allow_hyphen_values = true)]
        prefix: String,
        #[arg(long)]
        coeff_bound: u32,
    },
    /// Derived sequences, period detection and the extension closed forms.
    Sequence {
        #[arg(long, allow_hyphen_values = true)]
        sequence: String,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 8)]
        m_max: usize,
        /// Verify the closed forms for this period.
        #[arg(short = 'm', long)]
        check_period: Option<usize>,
    },
    /// Shift / scale / reciprocal transforms and their value identities.
    Transforms {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        sequence: String,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(short = 'j', long)]
        j: u64,
        #[arg(short = 'm', long, default_value_t = 1)]
        m: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(records) => {
            print_records(&records, cli.format);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded
        | Error::BoxTooLarge
        | Error::CapTooLarge
        | Error::FactorizationTooLarge => 3,
        _ => 2,
    }
}

fn budget_of(cli: &Cli) -> Budget {
    let mut b = Budget::default();
    if let Some(seed) = cli.seed {
        b.seed = seed;
    }
    b
}

fn max_points(cli: &Cli) -> u64 {
    cli.budget.unwrap_or(5_000_000)
}

fn parse_targets(field: NumberField, text: &str) -> Result<Vec<BigRational>, Error> {
    let _ = field;
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',').map(parse::parse_rational).collect()
}

fn parse_primes(text: &str) -> Result<Vec<u64>, Error> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad prime `{p}`")))
        })
        .collect()
}

fn place_set(field: NumberField, s_primes: &str) -> Result<PlaceSet, Error> {
    Ok(PlaceSet::from_rational_primes(
        field,
        &parse_primes(s_primes)?,
    ))
}

fn alpha_of(field: NumberField, args: &AlphaArgs) -> Result<AlgebraicNumber, Error> {
    if !field.is_rationals() {
        return Err(Error::UnsupportedField);
    }
    match (&args.alpha, &args.min_poly) {
        (Some(a), None) => {
            let el = parse::parse_element(field, a)?;
            Ok(AlgebraicNumber::from_rational(
                el.as_rational().expect("rational field").clone(),
            ))
        }
        (None, Some(mp)) => {
            let coeffs: Result<Vec<BigRational>, Error> =
                mp.split(',').map(parse::parse_rational).collect();
            AlgebraicNumber::from_min_poly(&coeffs?, args.root)
        }
        _ => Err(Error::Parse(
            "exactly one of --alpha or --min-poly is required".into(),
        )),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable report")
}

fn run(cli: &Cli) -> Result<Vec<Value>, Error> {
    let field = parse::parse_field(&cli.field)?;
    let budget = budget_of(cli);
    match &cli.command {
        Command::FieldInfo => {
            let inv = field_invariants(&field)?;
            let mut obj = to_value(&inv);
            if let Value::Object(map) = &mut obj {
                map.insert("field".into(), json!(field.to_string()));
                map.insert("discriminant".into(), json!(field.discriminant()));
            }
            Ok(vec![obj])
        }
        Command::Zeta { s } => {
            let value = dedekind_zeta(&field, *s, cli.precision)?;
            Ok(vec![json!({
                "field": field.to_string(),
                "s": s,
                "value": value,
                "precision": cli.precision,
            })])
        }
        Command::Height { value, poly, point } => match (value, poly, point) {
            (Some(v), None, None) => {
                let el = parse::parse_element(field, v)?;
                let (h_mult, h_log) = element_height(field, &el)?;
                Ok(vec![json!({
                    "element": el.to_string(),
                    "height": h_mult,
                    "log_height": h_log,
                    "absolute_log_height": h_log / field.degree() as f64,
                })])
            }
            (None, Some(p), None) => {
                let f = parse::parse_polynomial(field, p)?;
                let (h_mult, h_log) = height_polynomial(&f)?;
                Ok(vec![json!({
                    "poly": f.to_string(),
                    "height": h_mult,
                    "log_height": h_log,
                })])
            }
            (None, None, Some(pt)) => {
                let coords: Result<Vec<_>, Error> = pt
                    .split(':')
                    .map(|c| parse::parse_element(field, c))
                    .collect();
                let point = ProjectivePoint::new(field, coords?)?;
                let (h_mult, h_log) = powval::heights::height_point(&point)?;
                Ok(vec![json!({
                    "point": pt,
                    "height": h_mult,
                    "log_height": h_log,
                })])
            }
            _ => Err(Error::Parse(
                "give exactly one of <value>, --poly or --point".into(),
            )),
        },
        Command::Mahler { poly } => {
            let f = parse::parse_polynomial(field, poly)?;
            let m = mahler_measure(&f, cli.precision)?;
            let report = check_discriminant_bounds(&f).ok();
            Ok(vec![json!({
                "poly": f.to_string(),
                "mahler": m,
                "precision": cli.precision,
                "discriminant_bounds": report.map(|r| to_value(&r)),
            })])
        }
        Command::Powerful { s, value, poly } => match (value, poly) {
            (Some(v), None) => {
                let el = parse::parse_element(field, v)?;
                let (ok, witness) = is_powerful_element(field, &el, *s, &budget)?;
                Ok(vec![json!({
                    "element": el.to_string(),
                    "s": s,
                    "powerful": ok,
                    "witness": witness.map(|w| w.to_string()),
                })])
            }
            (None, Some(p)) => {
                let f = parse::parse_polynomial(field, p)?;
                let ok = is_powerful_polynomial(&f, *s)?;
                Ok(vec![json!({
                    "poly": f.to_string(),
                    "s": s,
                    "powerful": ok,
                })])
            }
            _ => Err(Error::Parse("give exactly one of <value> or --poly".into())),
        },
        Command::Decompose { poly, s } => {
            let f = parse::parse_polynomial(field, poly)?;
            let profile = squarefree_decomposition(&f)?;
            let mut obj = json!({
                "poly": f.to_string(),
                "unit": profile.unit.to_string(),
                "s_plus": profile.s_plus,
                "radical": profile.radical.to_string(),
                "radical_degree": profile.radical_degree,
                "parts": profile
                    .parts
                    .iter()
                    .map(|(g, m)| json!({"factor": g.to_string(), "multiplicity": m}))
                    .collect::<Vec<_>>(),
            });
            if let Some(s) = s {
                let canon = canonical_representative(&f, *s, &budget)?;
                if let Value::Object(map) = &mut obj {
                    map.insert("canonical".into(), json!(canon.to_string()));
                }
            }
            Ok(vec![obj])
        }
        Command::Nevanlinna {
            alpha,
            targets,
            s_primes,
        } => {
            let s = place_set(field, s_primes)?;
            let target_vals = parse_targets(field, targets)?;
            let report = if field.is_rationals() && (alpha.min_poly.is_some()) {
                let a = alpha_of(field, alpha)?;
                decompose_algebraic(&s, &a, &target_vals)?
            } else if let Some(text) = &alpha.alpha {
                let el = parse::parse_element(field, text)?;
                let target_els = target_vals
                    .iter()
                    .map(|q| powval::FieldElement::from_rational(field, q.clone()))
                    .collect::<Vec<_>>();
                decompose(field, &s, &el, &target_els)?
            } else {
                let a = alpha_of(field, alpha)?;
                decompose_algebraic(&s, &a, &target_vals)?
            };
            Ok(vec![to_value(&report)])
        }
        Command::Vojta {
            alpha,
            targets,
            eps,
            c,
            degree_bound,
            form,
            s_primes,
        } => {
            let s = place_set(field, s_primes)?;
            let a = alpha_of(field, alpha)?;
            let target_vals = parse_targets(field, targets)?;
            let form = match form {
                FormArg::Original => VojtaForm::Original,
                FormArg::Counting => VojtaForm::Counting,
                FormArg::Truncated => VojtaForm::Truncated,
            };
            let report = powval::nevanlinna::vojta_report(
                &s,
                &target_vals,
                &a,
                *eps,
                *c,
                *degree_bound,
                form,
            )?;
            Ok(vec![to_value(&report)])
        }
        Command::Bounds {
            r,
            s,
            sequence,
            s_primes,
            n_exceptional,
            c5,
            c6,
            subtract_o_term,
        } => {
            let prefix = parse::parse_sequence(field, sequence)?;
            let places = place_set(field, s_primes)?;
            let mut inputs = BoundInputs::new(*r, *s, prefix.terms().to_vec(), places)?;
            inputs.n_exceptional = *n_exceptional;
            inputs.c5 = *c5;
            inputs.c6 = *c6;
            inputs.subtract_o_term = *subtract_o_term;
            let report = compute_bounds(&inputs)?;
            Ok(vec![to_value(&report)])
        }
        Command::KeyInequality { r, s } => {
            let report = key_inequality_check(*r, *s)?;
            Ok(vec![to_value(&report)])
        }
        Command::Count {
            degree,
            height_cap,
            c5,
            c6,
            list,
        } => {
            let cap = parse::parse_rational(height_cap)?;
            let enum_budget = EnumerationBudget::new(cap, *degree, max_points(cli))?;
            let report = count_points(&enum_budget, *c5, *c6)?;
            let mut records = vec![to_value(&report)];
            if *list {
                for p in enumerate_points(&enum_budget)? {
                    records.push(json!({
                        "point": p.describe(),
                        "height": p.height(),
                    }));
                }
            }
            Ok(records)
        }
        Command::Search {
            r,
            s,
            prefix,
            coeff_bound,
        } => {
            let prefix = parse::parse_sequence(field, prefix)?;
            let box_ = SearchBox::new(*r, *s, prefix, *coeff_bound, max_points(cli))?;
            let results = search_polynomials(&box_)?;
            Ok(results
                .iter()
                .map(|f| {
                    json!({
                        "poly": f.to_string(),
                        "degree": f.degree(),
                    })
                })
                .collect())
        }
        Command::Sequence {
            sequence,
            kind,
            m_max,
            check_period,
        } => {
            let prefix = parse::parse_sequence(field, sequence)?;
            let derived = derived_sequence(&prefix, (*kind).into())?;
            let period = detect_period(&derived, *m_max);
            let mut obj = json!({
                "length": prefix.len(),
                "kind": to_value(&DerivedKind::from(*kind)),
                "derived": derived.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                "period": period,
            });
            if let Some(m) = check_period {
                let checks = extension_lemma_check(&prefix, *m, (*kind).into())?;
                if let Value::Object(map) = &mut obj {
                    map.insert(
                        "extension_check_pass".into(),
                        json!(checks.iter().all(|(_, ok)| *ok)),
                    );
                    map.insert("extension_check_indices".into(), json!(checks.len()));
                }
            }
            Ok(vec![obj])
        }
        Command::Transforms {
            poly,
            sequence,
            kind,
            j,
            m,
        } => {
            let f = parse::parse_polynomial(field, poly)?;
            let prefix = parse::parse_sequence(field, sequence)?;
            let kind: DerivedKind = (*kind).into();
            let transformed = match kind {
                DerivedKind::Differences => json!({
                    "transform": shift_transform(&f, *j, &prefix, *m)?.to_string(),
                    "is_polynomial": true,
                }),
                DerivedKind::Ratios => json!({
                    "transform": scale_transform(&f, (*j).max(1), &prefix, *m)?.to_string(),
                    "is_polynomial": true,
                }),
                DerivedKind::ReciprocalDifferences => {
                    let (rf, is_poly) = inversion_transform(&f, *j, &prefix, *m, f.degree())?;
                    json!({
                        "transform": rf.to_string(),
                        "is_polynomial": is_poly,
                    })
                }
            };
            let checks = transform_value_identity_check(&f, *j, &prefix, *m, kind)?;
            let mut obj = transformed;
            if let Value::Object(map) = &mut obj {
                map.insert("poly".into(), json!(f.to_string()));
                map.insert("j".into(), json!(j));
                map.insert("m".into(), json!(m));
                map.insert("kind".into(), to_value(&kind));
                map.insert(
                    "value_identity_pass".into(),
                    json!(checks.iter().all(|(_, ok)| *ok)),
                );
                map.insert("value_identity_indices".into(), json!(checks.len()));
            }
            Ok(vec![obj])
        }
    }
}

fn print_records(records: &[Value], format: Format) {
    match format {
        Format::Json => {
            for r in records {
                println!("{}", serde_json::to_string(r).expect("valid json"));
            }
        }
        Format::Csv => {
            let rows: Vec<BTreeMap<String, String>> =
                records.iter().flat_map(flatten_record).collect();
            let mut headers: Vec<String> = Vec::new();
            for row in &rows {
                for key in row.keys() {
                    if !headers.contains(key) {
                        headers.push(key.clone());
                    }
                }
            }
            headers.sort();
            println!("{}", headers.join(","));
            for row in &rows {
                let cells: Vec<String> = headers
                    .iter()
                    .map(|h| csv_escape(row.get(h).map(String::as_str).unwrap_or("")))
                    .collect();
                println!("{}", cells.join(","));
            }
        }
    }
}

fn csv_escape(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') || cell.contains('\n') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

fn scalar_to_string(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// Flatten a JSON object to CSV rows: nested objects get dotted keys, arrays
/// of scalars are joined with ';', and an array of objects explodes the
/// record into one row per entry.
fn flatten_record(v: &Value) -> Vec<BTreeMap<String, String>> {
    let mut base = BTreeMap::new();
    let mut expansions: Vec<(String, &Vec<Value>)> = Vec::new();
    if let Value::Object(map) = v {
        flatten_into(map, "", &mut base, &mut expansions);
    } else {
        base.insert("value".into(), scalar_to_string(v));
    }
    if expansions.is_empty() {
        return vec![base];
    }
    let mut rows = Vec::new();
    for (prefix, items) in expansions {
        for item in items {
            let mut row = base.clone();
            if let Value::Object(map) = item {
                let mut nested = Vec::new();
                flatten_into(map, &prefix, &mut row, &mut nested);
            } else {
                row.insert(prefix.clone(), scalar_to_string(item));
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        vec![base]
    } else {
        rows
    }
}

fn flatten_into<'a>(
    map: &'a Map<String, Value>,
    prefix: &str,
    row: &mut BTreeMap<String, String>,
    expansions: &mut Vec<(String, &'a Vec<Value>)>,
) {
    for (k, v) in map {
        let key = if prefix.is_empty() {
            k.clone()
        } else {
            format!("{prefix}.{k}")
        };
        match v {
            Value::Object(inner) => flatten_into(inner, &key, row, expansions),
            Value::Array(items) => {
                if items.iter().all(|i| !i.is_object()) {
                    let joined: Vec<String> = items.iter().map(scalar_to_string).collect();
                    row.insert(key, joined.join(";"));
                } else {
                    expansions.push((key, items));
                }
            }
            scalar => {
                row.insert(key, scalar_to_string(scalar));
            }
        }
    }
}
