//! `gapdinv`: command-line access to the gap-poset quadratic form, dinv
//! statistics, arrow bijections and cone decomposition.
//!
//! Exit codes: 0 success, 1 bad parameters or input, 2 a verification
//! check failed.

mod input;
mod output;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use gapdinv_core::bijections::{boundary_arrow_set, verify_map, Arrow, Color};
use gapdinv_core::cone::{self, decompose, effective_bound_check, nested_to_vector, ConeVector};
use gapdinv_core::forms::{self, b_polar, b_raw, b_sym, deficit_b_raw, deficit_q, q};
use gapdinv_core::rational::{self, int, Rational};
use gapdinv_core::series::{
    self, catalan_count, dinv_distribution, z_partial_sum, DEFAULT_PATH_CAP, DEFAULT_VECTOR_CAP,
};
use gapdinv_core::statistics::{classify_cells, cross_dinv, cross_dinv_half, dinv, nested_dinv};
use gapdinv_core::verify::{run_verify, VerifyOptions};
use gapdinv_core::{enumerate_subdiagrams, Cell, Error, GVector, GapDiagram, Subdiagram};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use output::{Format, Output};

#[derive(Parser)]
#[command(
    name = "gapdinv",
    version,
    about = "Exact gap-poset quadratic forms and dinv statistics for <a,b>"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Pair {
    /// Smaller generator.
    #[arg(long)]
    a: i64,
    /// Larger generator, coprime to a.
    #[arg(long)]
    b: i64,
}

/// One argument of a bilinear form: a vector or a diagram indicator.
#[derive(Args)]
struct TwoSides {
    /// First argument as a vector, e.g. '{"7":"1/2","4":1}'.
    #[arg(long)]
    n: Option<String>,
    /// First argument as a diagram, e.g. '{"rows":[2,1]}'.
    #[arg(long)]
    d: Option<String>,
    /// Second argument as a vector.
    #[arg(long)]
    m: Option<String>,
    /// Second argument as a diagram.
    #[arg(long)]
    e: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// The gap diagram G and its values.
    Gaps {
        #[command(flatten)]
        pair: Pair,
        /// Also list projections of this gap value onto every row.
        #[arg(long)]
        project: Option<i64>,
    },
    /// All subdiagrams (lattice paths) with size and dinv.
    Paths {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
        cap: u64,
    },
    /// dinv of one subdiagram.
    Dinv {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, visible_alias = "d")]
        diagram: String,
    },
    /// dinv(D, E) as a half-integer.
    CrossDinv {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        d: String,
        #[arg(long)]
        e: String,
    },
    /// Blue, red and dinv-contributing cells of a subdiagram.
    Classify {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, visible_alias = "d")]
        diagram: String,
    },
    /// Q(n) for a vector or a diagram indicator.
    Qform {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        vector: Option<String>,
        #[arg(long, visible_alias = "d")]
        diagram: Option<String>,
    },
    /// The non-symmetric form B'(n, m).
    Braw {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        sides: TwoSides,
    },
    /// The symmetric form B(n, m), cross-checked against polarization.
    Bform {
        #[command(flatten)]
        pair: Pair,
        #[command(flatten)]
        sides: TwoSides,
    },
    /// Arrow-count deficits |D| - |N(D,U_D)| or |E| - |N(D,U_E)|.
    Deficit {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, visible_alias = "diagram")]
        d: String,
        #[arg(long)]
        e: Option<String>,
    },
    /// Arrows from D into the upper boundary of E (E defaults to D).
    Arrows {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, visible_alias = "diagram")]
        d: String,
        #[arg(long)]
        e: Option<String>,
    },
    /// The arrow-to-cell map with its inverse checked.
    Phi {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, visible_alias = "diagram")]
        d: String,
        #[arg(long)]
        e: Option<String>,
    },
    /// Exhaustive checks over all subdiagrams (and pairs with --pairwise).
    Verify {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        pairwise: bool,
        #[arg(long)]
        max_pairs: Option<u64>,
        /// Include wall time (makes output run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Write a cone vector as a positive combination of nested indicators.
    Decompose {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        vector: String,
    },
    /// Check |G|·Q(n) >= ‖n‖∞² for one vector, or on seeded random vectors.
    BoundCheck {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, required_unless_present = "random")]
        vector: Option<String>,
        /// Number of random trials instead of --vector.
        #[arg(long, conflicts_with = "vector")]
        random: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// dinv of a nested family D_1 ⊆ … ⊆ D_k, compared with Q(Σ 1_{D_i}).
    NestedDinv {
        #[command(flatten)]
        pair: Pair,
        /// JSON array of diagrams.
        #[arg(long)]
        family: String,
    },
    /// Σ_D t^dinv(D) over all subdiagrams.
    DinvDist {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
        cap: u64,
    },
    /// Partial sum of z^Q(n) over integer cone vectors up to z^order.
    Zseries {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        order: u64,
        #[arg(long, default_value_t = DEFAULT_VECTOR_CAP)]
        cap: u64,
        #[arg(long)]
        radius: Option<u64>,
    },
    /// Number of subdiagrams, binom(a+b, a)/(a+b).
    Catalan(Pair),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Gaps { .. } => "gaps",
            Command::Paths { .. } => "paths",
            Command::Dinv { .. } => "dinv",
            Command::CrossDinv { .. } => "cross-dinv",
            Command::Classify { .. } => "classify",
            Command::Qform { .. } => "qform",
            Command::Braw { .. } => "braw",
            Command::Bform { .. } => "bform",
            Command::Deficit { .. } => "deficit",
            Command::Arrows { .. } => "arrows",
            Command::Phi { .. } => "phi",
            Command::Verify { .. } => "verify",
            Command::Decompose { .. } => "decompose",
            Command::BoundCheck { .. } => "bound-check",
            Command::NestedDinv { .. } => "nested-dinv",
            Command::DinvDist { .. } => "dinv-dist",
            Command::Zseries { .. } => "zseries",
            Command::Catalan(_) => "catalan",
        }
    }
}

/// A finished command: its output, and whether a verification check failed.
struct Outcome {
    output: Output,
    failure: Option<String>,
}

impl From<Output> for Outcome {
    fn from(output: Output) -> Self {
        Outcome {
            output,
            failure: None,
        }
    }
}

impl Outcome {
    fn checked(output: Output, ok: bool, what: &str) -> Self {
        Outcome {
            output,
            failure: (!ok).then(|| format!("verification failed: {what}")),
        }
    }
}

type CmdResult = Result<Outcome, Error>;

fn fmt_r(r: &Rational) -> String {
    rational::format(r)
}

fn gap_of(pair: &Pair) -> Result<GapDiagram, Error> {
    GapDiagram::new(pair.a, pair.b)
}

fn sorted_values(gap: &GapDiagram, cells: &[Cell]) -> Vec<i64> {
    let mut v: Vec<i64> = cells.iter().map(|&c| gap.value(c)).collect();
    v.sort_unstable();
    v
}

fn diagram_json(d: &Subdiagram) -> Value {
    json!({"rows": d.rows(), "values": d.values()})
}

fn vector_json(gap: &GapDiagram, n: &GVector) -> Value {
    let map: serde_json::Map<String, Value> = n
        .to_value_map(gap)
        .iter()
        .map(|(v, x)| (v.to_string(), Value::String(fmt_r(x))))
        .collect();
    Value::Object(map)
}

fn arrow_json(gap: &GapDiagram, arrow: &Arrow) -> Value {
    json!({
        "source": gap.value(arrow.source),
        "target": gap.value(arrow.target),
        "color": arrow.color,
    })
}

fn color_name(c: Color) -> &'static str {
    match c {
        Color::Blue => "blue",
        Color::Red => "red",
    }
}

/// `G` drawn top row first; `mark` decides what each cell shows.
fn grid(gap: &GapDiagram, mark: impl Fn(Cell) -> String) -> String {
    let width = mark_width(gap, &mark);
    let mut out = String::new();
    for y in (1..=gap.height() as i64).rev() {
        let cells: Vec<String> = (1..=gap.row_length(y) as i64)
            .map(|x| format!("{:>width$}", mark(Cell::new(x, y))))
            .collect();
        out.push_str(cells.join(" ").trim_end());
        out.push('\n');
    }
    out
}

fn mark_width(gap: &GapDiagram, mark: &impl Fn(Cell) -> String) -> usize {
    gap.cells()
        .iter()
        .map(|&c| mark(c).len())
        .max()
        .unwrap_or(1)
}

fn side(
    gap: &GapDiagram,
    vector: &Option<String>,
    diagram: &Option<String>,
    which: &str,
) -> Result<GVector, Error> {
    match (vector, diagram) {
        (Some(v), None) => input::parse_vector(gap, v),
        (None, Some(d)) => Ok(GVector::indicator(gap, &input::parse_diagram(gap, d)?)),
        _ => Err(Error::Parse(format!(
            "give exactly one of the {which} vector or diagram"
        ))),
    }
}

fn two_sides(gap: &GapDiagram, s: &TwoSides) -> Result<(GVector, GVector), Error> {
    Ok((
        side(gap, &s.n, &s.d, "first (--n/--d)")?,
        side(gap, &s.m, &s.e, "second (--m/--e)")?,
    ))
}

fn optional_e(gap: &GapDiagram, d: &Subdiagram, e: &Option<String>) -> Result<Subdiagram, Error> {
    match e {
        Some(e) => input::parse_diagram(gap, e),
        None => Ok(d.clone()),
    }
}

fn cmd_gaps(pair: &Pair, project: Option<i64>) -> CmdResult {
    let gap = gap_of(pair)?;
    let j = gap.to_json();
    let mut json = json!({
        "a": j.a,
        "b": j.b,
        "genus": gap.genus(),
        "frobenius": gap.params().frobenius(),
        "rows": j.rows,
        "values": j.values,
        "gap_set": gap.gap_values(),
    });
    let mut text = grid(&gap, |c| gap.value(c).to_string());
    if let Some(v) = project {
        let i = gap.cell_of_value(v)?;
        let p = gap.params();
        let rows: Vec<Value> = (1..=gap.height() as i64)
            .map(|r| {
                let (j, k) = (p.proj_row(i, r), p.antiproj_row(i, r));
                text.push_str(&format!(
                    "row {r}: proj {} antiproj {}\n",
                    p.value(j),
                    p.value(k)
                ));
                json!({
                    "row": r,
                    "proj": p.value(j),
                    "proj_in_gap": gap.contains(j),
                    "antiproj": p.value(k),
                    "antiproj_in_gap": gap.contains(k),
                })
            })
            .collect();
        json["projections"] = json!({"value": v, "rows": rows});
    }
    let out = Output::json(json).with_text(text).with_table(
        vec!["x", "y", "value"],
        gap.cells()
            .iter()
            .map(|c| vec![c.x.to_string(), c.y.to_string(), gap.value(*c).to_string()])
            .collect(),
    );
    Ok(out.into())
}

fn ensure_path_cap(gap: &GapDiagram, cap: u64) -> Result<(), Error> {
    let count = catalan_count(gap.params());
    if count > cap.into() {
        return Err(Error::CapExceeded {
            what: "subdiagrams",
            estimate: count.to_string(),
            cap,
        });
    }
    Ok(())
}

fn cmd_paths(pair: &Pair, cap: u64) -> CmdResult {
    let gap = gap_of(pair)?;
    ensure_path_cap(&gap, cap)?;
    let mut rows = Vec::new();
    let mut paths = Vec::new();
    for d in enumerate_subdiagrams(&gap) {
        let k = dinv(&d);
        let r: Vec<String> = d.rows().iter().map(|x| x.to_string()).collect();
        rows.push(vec![r.join(" "), d.size().to_string(), k.to_string()]);
        paths.push(json!({"rows": d.rows(), "size": d.size(), "dinv": k}));
    }
    let out =
        Output::json(json!({"a": gap.a(), "b": gap.b(), "count": paths.len(), "paths": paths}))
            .with_table(vec!["rows", "size", "dinv"], rows);
    Ok(out.into())
}

fn cmd_dinv(pair: &Pair, diagram: &str) -> CmdResult {
    let gap = gap_of(pair)?;
    let d = input::parse_diagram(&gap, diagram)?;
    Ok(Output::json(json!({"dinv": dinv(&d), "size": d.size(), "values": d.values()})).into())
}

fn cmd_cross_dinv(pair: &Pair, d: &str, e: &str) -> CmdResult {
    let gap = gap_of(pair)?;
    let d = input::parse_diagram(&gap, d)?;
    let e = input::parse_diagram(&gap, e)?;
    let total = cross_dinv(&d, &e)?;
    Ok(Output::json(json!({
        "double_dinv": total.doubled,
        "dinv": total.to_string(),
        "d_part": cross_dinv_half(&d, &e)?,
        "e_part": cross_dinv_half(&e, &d)?,
    }))
    .into())
}

fn cmd_classify(pair: &Pair, diagram: &str) -> CmdResult {
    let gap = gap_of(pair)?;
    let d = input::parse_diagram(&gap, diagram)?;
    let cls = classify_cells(&d);
    let mut rows = Vec::new();
    for c in d.cells() {
        let class = if cls.blue.contains(&c) {
            "blue"
        } else if cls.red.contains(&c) {
            "red"
        } else {
            "contributing"
        };
        rows.push(vec![
            gap.value(c).to_string(),
            c.x.to_string(),
            c.y.to_string(),
            class.to_string(),
        ]);
    }
    rows.sort_by_key(|r| r[0].parse::<i64>().unwrap());
    let text = grid(&gap, |c| {
        if !d.contains(c) {
            ".".into()
        } else if cls.blue.contains(&c) {
            "B".into()
        } else if cls.red.contains(&c) {
            "R".into()
        } else {
            "*".into()
        }
    });
    let out = Output::json(json!({
        "dinv": cls.contributing.len(),
        "blue": sorted_values(&gap, &cls.blue),
        "red": sorted_values(&gap, &cls.red),
        "contributing": sorted_values(&gap, &cls.contributing),
    }))
    .with_text(text)
    .with_table(vec!["value", "x", "y", "class"], rows);
    Ok(out.into())
}

fn cmd_qform(pair: &Pair, vector: &Option<String>, diagram: &Option<String>) -> CmdResult {
    let gap = gap_of(pair)?;
    let n = side(&gap, vector, diagram, "--vector/--diagram")?;
    Ok(Output::json(json!({"Q": fmt_r(&q(&gap, &n)?)})).into())
}

fn cmd_braw(pair: &Pair, sides: &TwoSides) -> CmdResult {
    let gap = gap_of(pair)?;
    let (n, m) = two_sides(&gap, sides)?;
    Ok(Output::json(json!({"B_raw": fmt_r(&b_raw(&gap, &n, &m)?)})).into())
}

fn cmd_bform(pair: &Pair, sides: &TwoSides) -> CmdResult {
    let gap = gap_of(pair)?;
    let (n, m) = two_sides(&gap, sides)?;
    let b = b_sym(&gap, &n, &m)?;
    let polar = b_polar(&gap, &n, &m)?;
    let ok = b == polar;
    let out = Output::json(json!({"B": fmt_r(&b), "B_polar": fmt_r(&polar)}));
    Ok(Outcome::checked(
        out,
        ok,
        "symmetrized form differs from polarization of Q",
    ))
}

fn cmd_deficit(pair: &Pair, d: &str, e: &Option<String>) -> CmdResult {
    let gap = gap_of(pair)?;
    let d = input::parse_diagram(&gap, d)?;
    let nd = GVector::indicator(&gap, &d);
    let (out, ok) = match e {
        None => {
            let deficit = deficit_q(&d);
            let form = q(&gap, &nd)?;
            let arrows = forms::boundary_arrows(&d, &d.upper_boundary()).len();
            let ok = form == int(deficit);
            let out = json!({"size": d.size(), "boundary_arrows": arrows, "deficit": deficit, "Q": fmt_r(&form)});
            (out, ok)
        }
        Some(e) => {
            let e = input::parse_diagram(&gap, e)?;
            let deficit = deficit_b_raw(&d, &e)?;
            let form = b_raw(&gap, &nd, &GVector::indicator(&gap, &e))?;
            let arrows = forms::boundary_arrows(&d, &e.upper_boundary()).len();
            let ok = form == int(deficit);
            let out = json!({"size_e": e.size(), "boundary_arrows": arrows, "deficit": deficit, "B_raw": fmt_r(&form)});
            (out, ok)
        }
    };
    Ok(Outcome::checked(
        Output::json(out),
        ok,
        "arrow-count deficit differs from the form",
    ))
}

fn cmd_arrows(pair: &Pair, d: &str, e: &Option<String>) -> CmdResult {
    let gap = gap_of(pair)?;
    let d = input::parse_diagram(&gap, d)?;
    let e = optional_e(&gap, &d, e)?;
    let arrows = boundary_arrow_set(&d, &e);
    let rows = arrows
        .iter()
        .map(|a| {
            vec![
                gap.value(a.source).to_string(),
                gap.value(a.target).to_string(),
                color_name(a.color).to_string(),
            ]
        })
        .collect();
    let out = Output::json(json!({
        "count": arrows.len(),
        "boundary": sorted_values(&gap, &e.upper_boundary().cells.iter().copied().filter(|&c| gap.contains(c)).collect::<Vec<_>>()),
        "arrows": arrows.iter().map(|a| arrow_json(&gap, a)).collect::<Vec<_>>(),
    }))
    .with_table(vec!["source", "target", "color"], rows);
    Ok(out.into())
}

fn cmd_phi(pair: &Pair, d: &str, e: &Option<String>) -> CmdResult {
    let gap = gap_of(pair)?;
    let d = input::parse_diagram(&gap, d)?;
    let e = optional_e(&gap, &d, e)?;
    let report = verify_map(&d, &e)?;
    let mut forward: Vec<&(Arrow, Cell)> = report
        .blue
        .forward
        .iter()
        .chain(&report.red.forward)
        .collect();
    forward.sort_by_key(|(a, _)| (gap.value(a.source), gap.value(a.target)));
    let rows = forward
        .iter()
        .map(|(a, c)| {
            vec![
                gap.value(a.source).to_string(),
                gap.value(a.target).to_string(),
                color_name(a.color).to_string(),
                gap.value(*c).to_string(),
            ]
        })
        .collect();
    let maps: Vec<Value> = forward
        .iter()
        .map(|(a, c)| {
            let mut v = arrow_json(&gap, a);
            v["image"] = json!(gap.value(*c));
            v
        })
        .collect();
    let ok = report.ok();
    let out = Output::json(json!({
        "maps": maps,
        "blue_images": report.blue.image_size,
        "red_images": report.red.image_size,
        "self_loops": report.self_loops,
        "inverse_ok": report.blue.inverse_ok && report.red.inverse_ok,
        "ok": ok,
    }))
    .with_table(vec!["source", "target", "color", "image"], rows);
    Ok(Outcome::checked(
        out,
        ok,
        "arrow map is not a bijection onto the predicted cells",
    ))
}

fn cmd_verify(pair: &Pair, pairwise: bool, max_pairs: Option<u64>, timing: bool) -> CmdResult {
    let gap = gap_of(pair)?;
    let start = Instant::now();
    let report = run_verify(
        &gap,
        VerifyOptions {
            pairwise,
            max_pairs,
        },
    );
    let mut json = serde_json::to_value(&report).expect("report serializes");
    if timing {
        json["wall_time_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    let mut text = String::new();
    for c in &report.checks {
        text.push_str(&format!(
            "{:<26} {:>9} cases {:>4} failures\n",
            c.name, c.cases, c.failures
        ));
    }
    if let Some(ce) = &report.first_counterexample {
        text.push_str(&format!(
            "first counterexample ({}): {}\n",
            ce.check, ce.detail
        ));
    }
    text.push_str(if report.ok { "ok\n" } else { "FAILED\n" });
    let rows = report
        .checks
        .iter()
        .map(|c| {
            vec![
                c.name.to_string(),
                c.cases.to_string(),
                c.failures.to_string(),
            ]
        })
        .collect();
    let out = Output::json(json)
        .with_text(text)
        .with_table(vec!["check", "cases", "failures"], rows);
    let ok = report.ok;
    Ok(Outcome::checked(out, ok, "see first_counterexample"))
}

fn cmd_decompose(pair: &Pair, vector: &str) -> CmdResult {
    let gap = gap_of(pair)?;
    let n = ConeVector::new(&gap, input::parse_vector(&gap, vector)?)?;
    let dec = decompose(&gap, &n)?;
    let exact = dec.reconstruct(&gap) == *n.vector();
    let rows = dec
        .weights
        .iter()
        .zip(&dec.layers)
        .map(|(w, d)| {
            let v: Vec<String> = d.values().iter().map(|x| x.to_string()).collect();
            vec![fmt_r(w), v.join(" ")]
        })
        .collect();
    let out = Output::json(json!({
        "k": dec.len(),
        "weights": dec.weights.iter().map(fmt_r).collect::<Vec<_>>(),
        "layers": dec.layers.iter().map(diagram_json).collect::<Vec<_>>(),
        "exact": exact,
    }))
    .with_table(vec!["weight", "values"], rows);
    Ok(Outcome::checked(
        out,
        exact,
        "decomposition does not reconstruct the vector",
    ))
}

fn cmd_bound_check(
    pair: &Pair,
    vector: &Option<String>,
    random: Option<u64>,
    seed: u64,
) -> CmdResult {
    let gap = gap_of(pair)?;
    if let Some(v) = vector {
        let n = ConeVector::new(&gap, input::parse_vector(&gap, v)?)?;
        let check = effective_bound_check(&gap, &n);
        let out = Output::json(
            json!({"Q": fmt_r(&check.q), "bound": fmt_r(&check.bound), "ok": check.ok}),
        );
        return Ok(Outcome::checked(out, check.ok, "Q(n) is below ‖n‖∞²/|G|"));
    }
    let trials = random.expect("clap requires --vector or --random");
    let pool: Vec<Subdiagram> = enumerate_subdiagrams(&gap).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut bound_failures, mut negative_b, mut decomposition_failures) = (0u64, 0u64, 0u64);
    for _ in 0..trials {
        let n = cone::random_cone_vector(&gap, &pool, &mut rng);
        let m = cone::random_cone_vector(&gap, &pool, &mut rng);
        if !effective_bound_check(&gap, &n).ok {
            bound_failures += 1;
        }
        if b_sym(&gap, n.vector(), m.vector())? < int(0) {
            negative_b += 1;
        }
        let dec = decompose(&gap, &n)?;
        if dec.len() > gap.genus() || dec.reconstruct(&gap) != *n.vector() {
            decomposition_failures += 1;
        }
    }
    let ok = bound_failures + negative_b + decomposition_failures == 0;
    let out = Output::json(json!({
        "a": gap.a(),
        "b": gap.b(),
        "seed": seed,
        "trials": trials,
        "bound_failures": bound_failures,
        "negative_b": negative_b,
        "decomposition_failures": decomposition_failures,
        "ok": ok,
    }));
    Ok(Outcome::checked(
        out,
        ok,
        "random cone vectors violated a bound",
    ))
}

fn cmd_nested_dinv(pair: &Pair, family: &str) -> CmdResult {
    let gap = gap_of(pair)?;
    let family = input::parse_family(&gap, family)?;
    let total = nested_dinv(&family)?;
    let n = nested_to_vector(&gap, &family)?;
    let form = q(&gap, n.vector())?;
    let ok = form == total.to_rational();
    let out = Output::json(json!({
        "nested_dinv": total.to_string(),
        "Q": fmt_r(&form),
        "vector": vector_json(&gap, n.vector()),
        "ok": ok,
    }));
    Ok(Outcome::checked(
        out,
        ok,
        "nested dinv differs from Q of the summed indicators",
    ))
}

fn cmd_dinv_dist(pair: &Pair, cap: u64) -> CmdResult {
    let gap = gap_of(pair)?;
    let poly = dinv_distribution(&gap, cap)?;
    let coeffs: serde_json::Map<String, Value> = poly
        .terms()
        .map(|(e, c)| (e.to_string(), json!(c)))
        .collect();
    let rows = poly
        .terms()
        .map(|(e, c)| vec![e.to_string(), c.to_string()])
        .collect();
    let out = Output::json(json!({"coeffs": coeffs, "total": poly.coefficient_sum()}))
        .with_table(vec!["exp", "count"], rows);
    Ok(out.into())
}

fn cmd_zseries(pair: &Pair, order: u64, cap: u64, radius: Option<u64>) -> CmdResult {
    let gap = gap_of(pair)?;
    let s = z_partial_sum(&gap, order, radius, cap)?;
    let rows = s
        .coefficients
        .iter()
        .enumerate()
        .map(|(e, c)| vec![e.to_string(), c.to_string()])
        .collect();
    let out = Output::json(json!({
        "order": s.order,
        "coeffs": s.coefficients,
        "radius": s.radius_used,
        "vectors": s.vectors_counted,
        "partial": true,
        "omitted": "per-vector correction polynomials",
    }))
    .with_table(vec!["exp", "coeff"], rows);
    Ok(out.into())
}

fn cmd_catalan(pair: &Pair) -> CmdResult {
    let gap = gap_of(pair)?;
    let count = series::catalan_count(gap.params());
    let value = match u64::try_from(&count) {
        Ok(n) => json!(n),
        Err(_) => json!(count.to_string()),
    };
    Ok(Output::json(json!({"a": gap.a(), "b": gap.b(), "catalan": value})).into())
}

fn run(command: &Command) -> CmdResult {
    match command {
        Command::Gaps { pair, project } => cmd_gaps(pair, *project),
        Command::Paths { pair, cap } => cmd_paths(pair, *cap),
        Command::Dinv { pair, diagram } => cmd_dinv(pair, diagram),
        Command::CrossDinv { pair, d, e } => cmd_cross_dinv(pair, d, e),
        Command::Classify { pair, diagram } => cmd_classify(pair, diagram),
        Command::Qform {
            pair,
            vector,
            diagram,
        } => cmd_qform(pair, vector, diagram),
        Command::Braw { pair, sides } => cmd_braw(pair, sides),
        Command::Bform { pair, sides } => cmd_bform(pair, sides),
        Command::Deficit { pair, d, e } => cmd_deficit(pair, d, e),
        Command::Arrows { pair, d, e } => cmd_arrows(pair, d, e),
        Command::Phi { pair, d, e } => cmd_phi(pair, d, e),
        Command::Verify {
            pair,
            pairwise,
            max_pairs,
            timing,
        } => cmd_verify(pair, *pairwise, *max_pairs, *timing),
        Command::Decompose { pair, vector } => cmd_decompose(pair, vector),
        Command::BoundCheck {
            pair,
            vector,
            random,
            seed,
        } => cmd_bound_check(pair, vector, *random, *seed),
        Command::NestedDinv { pair, family } => cmd_nested_dinv(pair, family),
        Command::DinvDist { pair, cap } => cmd_dinv_dist(pair, *cap),
        Command::Zseries {
            pair,
            order,
            cap,
            radius,
        } => cmd_zseries(pair, *order, *cap, *radius),
        Command::Catalan(pair) => cmd_catalan(pair),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version go to stdout with success; usage errors are exit 1
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match outcome.output.render(cli.format, cli.command.name()) {
        Ok(s) => print!("{s}"),
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    }
    match outcome.failure {
        None => ExitCode::SUCCESS,
        Some(msg) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
