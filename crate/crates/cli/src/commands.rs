//! Subcommand implementations. Each returns the text for stdout and an exit code.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};
use toribundle::autofactor::{
    check_cocycle, clutching_omega, clutching_twist, default_samples, factor_from, factor_records, loop_samples_csv,
};
use toribundle::bundles::{classify_projflat, endo, iso_matrix, omega, twist, x_bundle};
use toribundle::cohomology::{AltFormZ, Orientation2};
use toribundle::io::{alt_form_mod_to_text, alt_form_to_text, format_rational, int_matrix_to_text};
use toribundle::linalg::{rat, SkewRatForm};
use toribundle::nctorus::{
    bundle_of, iso_decide_with, iso_via_bundles_with, normal_form, q_theta, IsoDecision, NCTorusParams, NonIsoReason,
};
use toribundle::projrep::commutant_dim;
use toribundle::{Error, Result};

use crate::input;
use crate::{BundleArg, Cli, Command, Format, Orient, TableKind, ThetaArg};

pub struct Outcome {
    pub stdout: String,
    pub stderr: Option<String>,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, stderr: None, code: 0 }
    }

    fn with_code(stdout: String, code: u8) -> Self {
        Self { stdout, stderr: None, code }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::QTheta(t) => cmd_q_theta(t, cli.format),
        Command::NormalForm(t) => cmd_normal_form(t, cli.format),
        Command::Iso { theta, planar, theta2, planar2, m, m2, cap, via_bundles } => cmd_iso(
            (theta.as_deref(), planar.as_deref()),
            (theta2.as_deref(), planar2.as_deref()),
            (m, m2),
            *cap,
            *via_bundles,
            cli.format,
        ),
        Command::Twist(b) => cmd_twist(b, cli.format),
        Command::Omega(b) => cmd_omega(b, cli.format),
        Command::Classify { n, q, c1 } => cmd_classify(*n, q, c1.as_deref(), cli.format),
        Command::CocycleCheck { q, a, trials, seed, dump, csv } => {
            cmd_cocycle_check(q, a, *trials, *seed, *dump, *csv, cli.format)
        }
        Command::Rep(t) => cmd_rep(t, cli.format),
        Command::Table { kind } => match kind {
            TableKind::Bundles { q } => cmd_table_bundles(q, cli.format),
            TableKind::Theta { max_den } => cmd_table_theta(*max_den, cli.format),
        },
    };
    match result {
        Ok(out) => out,
        Err(e) => {
            let code = if matches!(e, Error::CapExceeded(_)) { 3 } else { 2 };
            Outcome { stdout: String::new(), stderr: Some(e.to_string()), code }
        }
    }
}

/// Replaces the few non-ASCII symbols used in library messages.
pub fn ascii(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            c if c.is_ascii() => out.push(c),
            'ℤ' => out.push('Z'),
            'ℚ' => out.push('Q'),
            'ℝ' => out.push('R'),
            'θ' => out.push_str("theta"),
            'ℓ' => out.push('l'),
            'γ' => out.push_str("gamma"),
            'β' => out.push_str("beta"),
            'ω' => out.push_str("omega"),
            'ρ' => out.push_str("rho"),
            'χ' => out.push_str("chi"),
            '−' => out.push('-'),
            '×' => out.push('x'),
            '≤' => out.push_str("<="),
            'ᵀ' | 'ᵗ' => out.push_str("^T"),
            '⁻' => out.push('^'),
            '¹' => out.push('1'),
            '²' => out.push('2'),
            'ⁿ' => out.push('n'),
            '₁' => out.push('1'),
            '₂' => out.push('2'),
            _ => out.push('?'),
        }
    }
    out
}

fn json_line(v: Value) -> String {
    format!("{}\n", serde_json::to_string(&v).expect("serializable"))
}

fn matrix_json<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn theta_of(t: &ThetaArg) -> Result<SkewRatForm> {
    input::theta(t.theta.as_deref(), t.planar.as_deref())
}

fn cmd_q_theta(t: &ThetaArg, fmt: Format) -> Result<Outcome> {
    let q = q_theta(&theta_of(t)?);
    Ok(Outcome::ok(match fmt {
        Format::Human => format!("{q}\n"),
        Format::Json => json_line(json!({ "q_theta": q.to_string() })),
    }))
}

fn cmd_normal_form(t: &ThetaArg, fmt: Format) -> Result<Outcome> {
    let nf = normal_form(&theta_of(t)?);
    let blocks: Vec<String> = nf.blocks.iter().map(format_rational).collect();
    let t_text = int_matrix_to_text(&nf.t);
    Ok(Outcome::ok(match fmt {
        Format::Human => format!(
            "blocks: {}\nfree_rank: {}\nt: {}\n",
            if blocks.is_empty() { "-".to_string() } else { blocks.join(" ") },
            nf.free_rank,
            t_text.to_json()
        ),
        Format::Json => json_line(json!({ "t": matrix_json(&t_text), "blocks": blocks, "free_rank": nf.free_rank })),
    }))
}

fn reason_text(r: NonIsoReason) -> &'static str {
    match r {
        NonIsoReason::Dimension => "dimension",
        NonIsoReason::Amplification => "amplification",
        NonIsoReason::QTheta => "q_theta",
        NonIsoReason::DivisorChain => "divisor-chain",
        NonIsoReason::Orbit => "orbit",
    }
}

fn cmd_iso(
    a: (Option<&str>, Option<&str>),
    b: (Option<&str>, Option<&str>),
    m: (&String, &String),
    cap: usize,
    via_bundles: bool,
    fmt: Format,
) -> Result<Outcome> {
    let p = NCTorusParams::new(input::theta(a.0, a.1)?, input::integer(m.0)?)?;
    let p2 = NCTorusParams::new(input::theta(b.0, b.1)?, input::integer(m.1)?)?;
    let d = if via_bundles { iso_via_bundles_with(&p, &p2, cap)? } else { iso_decide_with(&p, &p2, cap)? };
    Ok(match d {
        IsoDecision::Isomorphic(c) => {
            let (t, k) = (int_matrix_to_text(&c.t), int_matrix_to_text(&c.shift));
            Outcome::ok(match fmt {
                Format::Human => format!("true\nt: {}\nshift: {}\n", t.to_json(), k.to_json()),
                Format::Json => json_line(json!({ "isomorphic": true, "t": matrix_json(&t), "shift": matrix_json(&k) })),
            })
        }
        IsoDecision::NotIsomorphic(r) => Outcome::with_code(
            match fmt {
                Format::Human => format!("false\nreason: {}\n", reason_text(r)),
                Format::Json => json_line(json!({ "isomorphic": false, "reason": reason_text(r) })),
            },
            1,
        ),
        IsoDecision::Undecided(v) => Outcome::with_code(
            match fmt {
                Format::Human => format!("undecided\nvisited: {v}\n"),
                Format::Json => json_line(json!({ "isomorphic": null, "visited": v })),
            },
            3,
        ),
    })
}

fn orientation(o: Orient) -> Orientation2 {
    match o {
        Orient::Standard => Orientation2::Standard,
        Orient::Reversed => Orientation2::Reversed,
    }
}

struct Clutch {
    q: BigInt,
    a: BigInt,
    qs: usize,
    samples: usize,
}

fn clutch_setup(b: &BundleArg) -> Result<Clutch> {
    let q = input::integer(&b.q)?;
    let a = input::integer(&b.a)?;
    if !q.is_positive() {
        return Err(Error::NonPositiveModulus(q.to_string()));
    }
    let qs = q.to_usize().ok_or_else(|| Error::InvalidArgument("q too large".into()))?;
    let samples = b.samples.unwrap_or_else(|| default_samples(qs, &a));
    Ok(Clutch { q, a, qs, samples })
}

fn header(b: &BundleArg, c: &Clutch) -> String {
    format!("# samples={} tolerance={:e}\n", c.samples, b.tolerance)
}

fn cmd_twist(b: &BundleArg, fmt: Format) -> Result<Outcome> {
    let c = clutch_setup(b)?;
    let o = orientation(b.orientation);
    let value = if b.clutching {
        let w = clutching_twist(&factor_from(c.qs, &c.a)?, c.samples, b.tolerance)?;
        w * BigInt::from(o.sign())
    } else {
        twist(&x_bundle(&c.q, &c.a)?, o)?
    };
    Ok(Outcome::ok(match fmt {
        Format::Human if b.clutching => format!("{}{value}\n", header(b, &c)),
        Format::Human => format!("{value}\n"),
        Format::Json if b.clutching => json_line(
            json!({ "twist": value.to_string(), "samples": c.samples, "tolerance": b.tolerance }),
        ),
        Format::Json => json_line(json!({ "twist": value.to_string() })),
    }))
}

fn cmd_omega(b: &BundleArg, fmt: Format) -> Result<Outcome> {
    let c = clutch_setup(b)?;
    let o = orientation(b.orientation);
    let value = if b.clutching {
        let w = clutching_omega(&factor_from(c.qs, &c.a)?, c.samples, b.tolerance)?;
        if o == Orientation2::Reversed {
            w.inverse()
        } else {
            w
        }
    } else {
        omega(&endo(&x_bundle(&c.q, &c.a)?), o)?
    };
    let text = value.display_in(&c.q);
    Ok(Outcome::ok(match fmt {
        Format::Human if b.clutching => format!("{}{text}\n", header(b, &c)),
        Format::Human => format!("{text}\n"),
        Format::Json if b.clutching => {
            json_line(json!({ "omega": text, "samples": c.samples, "tolerance": b.tolerance }))
        }
        Format::Json => json_line(json!({ "omega": text })),
    }))
}

fn cmd_classify(n: usize, q: &str, c1: Option<&str>, fmt: Format) -> Result<Outcome> {
    let q = input::integer(q)?;
    let c = match c1 {
        Some(s) => input::alt_form(s)?,
        None => AltFormZ::zero(n),
    };
    if c.n() != n {
        return Err(Error::Shape(format!("c1 is a form on Z^{}, expected n = {n}", c.n())));
    }
    let e = classify_projflat(n, &q, &c)?;
    let a = endo(&e);
    let c1_text = alt_form_to_text(e.c1());
    let beta_text = alt_form_mod_to_text(a.beta());
    let planar = (n == 2).then(|| {
        let tw = twist(&e, Orientation2::Standard).expect("n = 2");
        let om = omega(&a, Orientation2::Standard).expect("n = 2").display_in(&q);
        (tw, om)
    });
    Ok(Outcome::ok(match fmt {
        Format::Human => {
            let mut s = format!("rank: {q}\nc1: {}\nbeta: {}\n", c1_text.to_json(), beta_text.to_json());
            if let Some((tw, om)) = &planar {
                s.push_str(&format!("twist: {tw}\nomega: {om}\n"));
            }
            s
        }
        Format::Json => {
            let mut v = json!({
                "vector": toribundle::io::BundleText::from(&e),
                "matrix": toribundle::io::BundleText::from(&a),
            });
            if let Some((tw, om)) = planar {
                v["twist"] = json!(tw.to_string());
                v["omega"] = json!(om);
            }
            json_line(v)
        }
    }))
}

fn cmd_cocycle_check(
    q: &str,
    a: &str,
    trials: usize,
    seed: u64,
    dump: Option<i64>,
    csv: Option<usize>,
    fmt: Format,
) -> Result<Outcome> {
    let qv = input::integer(q)?;
    let a = input::integer(a)?;
    if !qv.is_positive() {
        return Err(Error::NonPositiveModulus(qv.to_string()));
    }
    let qs = qv.to_usize().ok_or_else(|| Error::InvalidArgument("q too large".into()))?;
    let f = factor_from(qs, &a)?;
    let report = check_cocycle(&f, trials, seed);
    let bad = report.failures.len();
    let mut out = match fmt {
        Format::Human => format!("violations: {bad}/{trials}\n"),
        Format::Json => {
            let failures: Vec<Value> = report
                .failures
                .iter()
                .map(|(g, h)| json!([g.iter().map(|v| v.to_string()).collect::<Vec<_>>(), h.iter().map(|v| v.to_string()).collect::<Vec<_>>()]))
                .collect();
            json_line(json!({ "trials": trials, "seed": seed, "violations": bad, "failures": failures }))
        }
    };
    if let Some(r) = dump {
        if r < 0 {
            return Err(Error::InvalidArgument("dump radius must be non-negative".into()));
        }
        for rec in factor_records(&f, r) {
            out.push_str(&json_line(matrix_json(&rec)));
        }
    }
    if let Some(samples) = csv {
        if samples == 0 {
            return Err(Error::InvalidArgument("csv needs at least one sample".into()));
        }
        out.push_str(&loop_samples_csv(&f, samples));
    }
    Ok(Outcome::with_code(out, if bad == 0 { 0 } else { 1 }))
}

fn cmd_rep(t: &ThetaArg, fmt: Format) -> Result<Outcome> {
    let theta = theta_of(t)?;
    let b = bundle_of(&theta);
    let dim = b.rep.dim();
    let comm = commutant_dim(&b.rep);
    let records: Vec<Value> = b.rep.records().iter().map(matrix_json).collect();
    Ok(Outcome::ok(match fmt {
        Format::Human => {
            let mut s = format!("dim: {dim}\ncommutant_dim: {comm}\n");
            for r in records {
                s.push_str(&json_line(r));
            }
            s
        }
        Format::Json => json_line(json!({ "dim": dim, "commutant_dim": comm, "generators": records })),
    }))
}

fn cmd_table_bundles(q: &str, fmt: Format) -> Result<Outcome> {
    let q = input::integer(q)?;
    let count = q.to_i64().filter(|&v| v > 0 && v <= 10_000).ok_or_else(|| Error::InvalidArgument(format!("q = {q} out of range")))?;
    let mut reps: Vec<toribundle::bundles::MatrixBundleClass> = Vec::new();
    let mut rows = Vec::new();
    for a in 0..count {
        let e = x_bundle(&q, &BigInt::from(a))?;
        let m = endo(&e);
        let class = match reps.iter().position(|r| iso_matrix(r, &m)) {
            Some(i) => i,
            None => {
                reps.push(m.clone());
                reps.len() - 1
            }
        };
        let tw = twist(&e, Orientation2::Standard)?;
        let om = omega(&m, Orientation2::Standard)?.display_in(&q);
        let beta = toribundle::cohomology::planar_residue(m.beta());
        rows.push((a, tw, om, beta, class));
    }
    Ok(Outcome::ok(match fmt {
        Format::Human => {
            let mut s = String::from("a tw omega beta class\n");
            for (a, tw, om, beta, class) in &rows {
                s.push_str(&format!("{a} {tw} {om} {beta} {class}\n"));
            }
            s.push_str(&format!("classes: {}\n", reps.len()));
            s
        }
        Format::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(a, tw, om, beta, class)| {
                    json!({ "a": a, "twist": tw.to_string(), "omega": om, "beta": beta.to_string(), "class": class })
                })
                .collect();
            json_line(json!({ "q": q.to_string(), "rows": rows, "classes": reps.len() }))
        }
    }))
}

fn cmd_table_theta(max_den: u32, fmt: Format) -> Result<Outcome> {
    if max_den == 0 || max_den > 64 {
        return Err(Error::InvalidArgument("max-den must lie in 1..=64".into()));
    }
    let mut grid = Vec::new();
    for d in 1..=max_den as i64 {
        for p in 0..d {
            let x = rat(p, d);
            if x.denom() == &BigInt::from(d) || (p == 0 && d == 1) {
                grid.push(x);
            }
        }
    }
    let mut reps: Vec<SkewRatForm> = Vec::new();
    let mut rows = Vec::new();
    for x in grid {
        let theta = SkewRatForm::planar(x.clone());
        let p = NCTorusParams::new(theta.clone(), BigInt::from(1))?;
        let mut class = None;
        for (i, r) in reps.iter().enumerate() {
            let pr = NCTorusParams::new(r.clone(), BigInt::from(1))?;
            match iso_decide_with(&pr, &p, 1_000_000)? {
                IsoDecision::Isomorphic(_) => {
                    class = Some(i);
                    break;
                }
                IsoDecision::NotIsomorphic(_) => {}
                IsoDecision::Undecided(_) => return Err(Error::CapExceeded(1_000_000)),
            }
        }
        let class = class.unwrap_or_else(|| {
            reps.push(theta.clone());
            reps.len() - 1
        });
        rows.push((format_rational(&x), q_theta(&theta), class));
    }
    Ok(Outcome::ok(match fmt {
        Format::Human => {
            let mut s = String::from("theta q_theta class\n");
            for (x, q, c) in &rows {
                s.push_str(&format!("{x} {q} {c}\n"));
            }
            s.push_str(&format!("classes: {}\n", reps.len()));
            s
        }
        Format::Json => {
            let rows: Vec<Value> =
                rows.iter().map(|(x, q, c)| json!({ "theta": x, "q_theta": q.to_string(), "class": c })).collect();
            json_line(json!({ "rows": rows, "classes": reps.len() }))
        }
    }))
}
