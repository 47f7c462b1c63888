use crate::format::{parse_arrangement, parse_matrix, parse_quiver, write_quiver, ParseError};
use crate::report::Report;
use arrperv::arrangement::{chamber_distance, collinear, enumerate_faces, flats, Arrangement, FacePoset, Mode};
use arrperv::cousin::{
    perversity_support_check, smoothness_check, stalk_table, Cousin, ElementaryInclusion, FailureReason,
};
use arrperv::exactla::Field;
use arrperv::groupoid::{collinearity_presentation, crossing_path, salvetti_presentation, GroupoidPresentation};
use arrperv::onedim::{to_b, to_p, to_p_minus, to_quiver, BObject, PObject};
use arrperv::quiver::{multiplicities, restrict_flat, slice, validate_in, DoubleRep};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(name = "arrperv", version, about = "Exact computations with double quivers on real hyperplane arrangements")]
struct Cli {
    /// Override the mode declared in the input file.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    /// Coefficient field for ranks: `q` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    field: Field,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Linear,
    Affine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PresentationArg {
    Salvetti,
    Collinearity,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List faces with sign vectors, dimensions and interior points.
    Faces { arrangement: PathBuf },
    /// List flats by the hyperplanes containing them.
    Flats { arrangement: PathBuf },
    /// Composition C∘D of two faces.
    Compose {
        arrangement: PathBuf,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// Whether three faces are collinear (exit 1 if not).
    Collinear {
        arrangement: PathBuf,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
    },
    /// Check the three axioms of a double quiver.
    Validate { quiver: PathBuf },
    /// Cohomology of the global Cousin complex.
    Cousin { quiver: PathBuf },
    /// Stalk complexes on every S1 cell.
    Stalks { quiver: PathBuf },
    /// Generalization maps along elementary inclusions.
    Smooth { quiver: PathBuf },
    /// Support bounds for the quiver and its dual.
    Perversity { quiver: PathBuf },
    /// Restriction to a flat, given by its hyperplanes or by a face.
    Restrict {
        quiver: PathBuf,
        /// Comma-separated indices of all hyperplanes containing the flat.
        #[arg(long, conflicts_with = "face", required_unless_present = "face")]
        flat: Option<String>,
        /// Use the flat spanned by this face.
        #[arg(long, allow_hyphen_values = true)]
        face: Option<String>,
    },
    /// Transversal slice at a face.
    Slice {
        quiver: PathBuf,
        #[arg(allow_hyphen_values = true)]
        face: String,
    },
    /// The dual quiver.
    Dual { quiver: PathBuf },
    /// Multiplicities per flat.
    Mult { quiver: PathBuf },
    /// A presentation of the groupoid of chambers.
    Groupoid {
        arrangement: PathBuf,
        #[arg(long, value_enum, default_value = "salvetti")]
        presentation: PresentationArg,
    },
    /// The wall-crossing word between two chambers.
    Word {
        arrangement: PathBuf,
        #[arg(allow_hyphen_values = true)]
        from: String,
        #[arg(allow_hyphen_values = true)]
        to: String,
    },
    /// The dimension-1 dictionary.
    Onedim {
        #[command(subcommand)]
        op: OnedimOp,
    },
}

#[derive(Args, Debug)]
struct Idempotents {
    #[arg(long = "p-plus", allow_hyphen_values = true)]
    p_plus: String,
    #[arg(long = "p-minus", allow_hyphen_values = true)]
    p_minus: String,
}

#[derive(Subcommand, Debug)]
enum OnedimOp {
    /// (Φ, Ψ, u, v) to (E_0, P+, P-).
    ToB {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        /// dim Φ, needed when u and v have no entries.
        #[arg(long)]
        phi: Option<usize>,
        /// dim Ψ, needed when u and v have no entries.
        #[arg(long)]
        psi: Option<usize>,
    },
    /// (E_0, P+, P-) to (Φ, Ψ, u, v).
    ToP {
        #[command(flatten)]
        b: Idempotents,
        /// Use the functor with the roles of P+ and P- exchanged.
        #[arg(long)]
        minus: bool,
    },
    /// (E_0, Id - P+, Id - P-).
    Fourier {
        #[command(flatten)]
        b: Idempotents,
    },
    /// The double quiver on the line.
    ToQuiver {
        #[command(flatten)]
        b: Idempotents,
    },
}

fn parse_field(s: &str) -> Result<Field, String> {
    match s {
        "q" | "Q" => Ok(Field::Rational),
        _ => {
            let p = s.strip_prefix("fp:").ok_or_else(|| format!("expected `q` or `fp:<prime>`, found {s:?}"))?;
            let p: u64 = p.parse().map_err(|_| format!("bad prime {p:?}"))?;
            Field::prime(p).map_err(|e| e.to_string())
        }
    }
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// An input error, reported with exit status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CmdResult = Result<Report, InputError>;

struct Ctx {
    mode: Option<Mode>,
    field: Field,
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: ParseError) -> InputError {
    InputError(format!("{}:{e}", path.display()))
}

impl Ctx {
    fn arrangement(&self, path: &Path) -> Result<Arrangement, InputError> {
        parse_arrangement(&read(path)?, self.mode).map_err(|e| located(path, e))
    }

    fn poset(&self, path: &Path) -> Result<FacePoset, InputError> {
        Ok(enumerate_faces(&self.arrangement(path)?))
    }

    fn quiver(&self, path: &Path) -> Result<DoubleRep, InputError> {
        let q = parse_quiver(&read(path)?, self.mode).map_err(|e| located(path, e))?;
        q.check_field(self.field)?;
        Ok(q)
    }
}

/// A face argument; `(--)` may be used for sign vectors that look like
/// options.
fn face(p: &FacePoset, s: &str) -> Result<usize, InputError> {
    let s = match s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
        Some(inner) if !inner.is_empty() => inner,
        _ => s,
    };
    Ok(p.parse_face(s)?)
}

fn point(x: &[arrperv::exactla::Rat]) -> String {
    let parts: Vec<String> = x.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn faces_cmd(p: &FacePoset) -> Report {
    let mut text = String::from("index  signs  dim  interior point\n");
    let mut rows = Vec::new();
    for (i, f) in p.faces().iter().enumerate() {
        writeln!(text, "{i:>5}  {}  {}  {}", f.signs, f.dim, point(&f.interior_point)).unwrap();
        rows.push(json!({
            "index": i,
            "signs": f.signs.to_string(),
            "dim": f.dim,
            "interior_point": f.interior_point.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        }));
    }
    Report::new(true, text, json!({ "faces": rows }))
}

fn flats_cmd(a: &Arrangement) -> Report {
    let lat = flats(a);
    let mut text = String::from("index  hyperplanes  dim\n");
    let mut rows = Vec::new();
    for (i, l) in lat.flats().iter().enumerate() {
        writeln!(text, "{i:>5}  {:?}  {}", l.hyperplanes, l.dim).unwrap();
        rows.push(json!({ "index": i, "hyperplanes": l.hyperplanes, "dim": l.dim }));
    }
    Report::new(true, text, json!({ "flats": rows }))
}

fn validate_cmd(q: &DoubleRep, field: Field) -> Report {
    let p = q.poset();
    let r = validate_in(q, field);
    let l = |c: usize| p.signs(c).to_string();
    let mut text = String::new();
    for v in &r.mon_violations {
        writeln!(text, "Mon violated on ({}, {}): gamma delta - Id = {}", l(v.lower), l(v.upper), v.defect).unwrap();
    }
    if r.transition_checks_skipped {
        text.push_str("Tran and Inv not checked: transition maps are undefined without Mon\n");
    }
    for v in &r.tran_violations {
        let (a, b, c) = v.triple;
        writeln!(
            text,
            "Tran violated on ({}, {}, {}): phi_AC = {}, phi_BC phi_AB = {}",
            l(a),
            l(b),
            l(c),
            v.lhs,
            v.rhs
        )
        .unwrap();
    }
    for v in &r.inv_violations {
        writeln!(text, "Inv violated on ({}, {}): phi = {}", l(v.from), l(v.to), v.phi).unwrap();
    }
    writeln!(text, "verdict: {}", if r.verdict() { "pass" } else { "fail" }).unwrap();
    let data = json!({
        "mon_violations": r.mon_violations.iter().map(|v| json!({
            "lower": l(v.lower), "upper": l(v.upper), "defect": v.defect.to_string(),
        })).collect::<Vec<_>>(),
        "tran_violations": r.tran_violations.iter().map(|v| json!({
            "triple": [l(v.triple.0), l(v.triple.1), l(v.triple.2)],
            "lhs": v.lhs.to_string(), "rhs": v.rhs.to_string(),
        })).collect::<Vec<_>>(),
        "inv_violations": r.inv_violations.iter().map(|v| json!({
            "from": l(v.from), "to": l(v.to), "phi": v.phi.to_string(),
        })).collect::<Vec<_>>(),
        "transition_checks_skipped": r.transition_checks_skipped,
    });
    Report::new(r.verdict(), text, data)
}

fn cohomology_line(h: &[usize]) -> String {
    h.iter().enumerate().map(|(i, x)| format!("H^{i}: {x}")).collect::<Vec<_>>().join(", ")
}

fn cousin_cmd(q: &DoubleRep, field: Field) -> CmdResult {
    let cz = Cousin::new(q, field)?;
    let (g, chi) = match cz.global_complex() {
        Ok(g) => (g, cz.euler_characteristic()),
        Err(e) => return Ok(Report::new(false, format!("not a complex: {e}\n"), json!({ "error": e.to_string() }))),
    };
    let h = g.cohomology_in(field);
    let terms = g.complex.terms().to_vec();
    let text = format!("terms: {terms:?}\n{}\neuler characteristic: {chi}\n", cohomology_line(&h));
    Ok(Report::new(true, text, json!({ "terms": terms, "cohomology": h, "euler_characteristic": chi })))
}

fn stalks_cmd(q: &DoubleRep, field: Field) -> CmdResult {
    let p = q.poset();
    let table = stalk_table(q, field)?;
    let mut text = String::from("cell  terms  cohomology\n");
    let mut rows = Vec::new();
    for r in &table {
        let h = match &r.cohomology {
            Some(h) => cohomology_line(h),
            None => "not a complex".into(),
        };
        writeln!(text, "{}  {:?}  {h}", r.cell.label(p), r.terms).unwrap();
        rows.push(json!({ "cell": r.cell.label(p), "terms": r.terms, "cohomology": r.cohomology }));
    }
    let ok = table.iter().all(|r| r.cohomology.is_some());
    Ok(Report::new(ok, text, json!({ "stalks": rows })))
}

fn smooth_cmd(q: &DoubleRep, field: Field) -> CmdResult {
    let p = q.poset();
    let failures = smoothness_check(q, field)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for f in &failures {
        let kind = match f.kind {
            ElementaryInclusion::Flag => "flag",
            ElementaryInclusion::Wall => "wall",
        };
        let reason = match &f.reason {
            FailureReason::NotQuasiIso => "not a quasi-isomorphism".to_string(),
            FailureReason::NotChainMap(m) => format!("not a chain map: {m}"),
            FailureReason::StalkInvalid(m) => format!("stalk is not a complex: {m}"),
        };
        writeln!(text, "{kind} {} <= {}: {reason}", f.lower.label(p), f.upper.label(p)).unwrap();
        rows.push(json!({ "kind": kind, "lower": f.lower.label(p), "upper": f.upper.label(p), "reason": reason }));
    }
    writeln!(text, "verdict: {}", if failures.is_empty() { "pass" } else { "fail" }).unwrap();
    Ok(Report::new(failures.is_empty(), text, json!({ "failures": rows })))
}

fn perversity_cmd(q: &DoubleRep, field: Field) -> CmdResult {
    let p = q.poset();
    let v = perversity_support_check(q, field)?;
    let mut text = String::new();
    for x in &v {
        let which = if x.dual { "dual" } else { "quiver" };
        writeln!(text, "{which}: H^{} nonzero on {}", x.degree, x.cell.label(p)).unwrap();
    }
    writeln!(text, "verdict: {}", if v.is_empty() { "pass" } else { "fail" }).unwrap();
    let rows: Vec<Value> =
        v.iter().map(|x| json!({ "dual": x.dual, "cell": x.cell.label(p), "degree": x.degree })).collect();
    Ok(Report::new(v.is_empty(), text, json!({ "violations": rows })))
}

fn quiver_report(q: &DoubleRep) -> Report {
    let text = write_quiver(q);
    Report::new(true, text.clone(), json!({ "quiver": text }))
}

fn restrict_cmd(q: &DoubleRep, flat: Option<&str>, face_key: Option<&str>) -> CmdResult {
    let p = q.poset();
    let lat = flats(p.arrangement());
    let idx = match (flat, face_key) {
        (_, Some(f)) => lat.flat_of_face(p, face(p, f)?),
        (Some(list), None) => {
            let hs: Vec<usize> = if list.trim().is_empty() {
                Vec::new()
            } else {
                list.split(',').map(|t| t.trim().parse::<usize>()).collect::<Result<_, _>>()?
            };
            lat.find(&hs).ok_or_else(|| InputError(format!("{hs:?} is not the full hyperplane set of a flat")))?
        }
        (None, None) => return Err(InputError("give --flat or --face".into())),
    };
    Ok(quiver_report(&restrict_flat(q, lat.flat(idx))?))
}

fn mult_cmd(q: &DoubleRep) -> Report {
    let lat = flats(q.poset().arrangement());
    match multiplicities(q, &lat) {
        Ok(m) => {
            let mut text = String::from("hyperplanes  dim  multiplicity\n");
            let mut rows = Vec::new();
            for (l, v) in lat.flats().iter().zip(&m.values) {
                writeln!(text, "{:?}  {}  {v}", l.hyperplanes, l.dim).unwrap();
                rows.push(json!({ "hyperplanes": l.hyperplanes, "dim": l.dim, "value": v }));
            }
            let anomalies: Vec<&Vec<usize>> = m.anomalies.iter().map(|&i| &lat.flat(i).hyperplanes).collect();
            if !anomalies.is_empty() {
                writeln!(text, "negative multiplicities at {anomalies:?}").unwrap();
            }
            Report::new(anomalies.is_empty(), text, json!({ "multiplicities": rows, "anomalies": anomalies }))
        }
        Err(e) => Report::new(false, format!("{e}\n"), json!({ "error": e.to_string(), "flat": e.flat })),
    }
}

fn word_text(p: &FacePoset, pres: &GroupoidPresentation, w: &[usize]) -> String {
    if w.is_empty() {
        return "id".into();
    }
    w.iter().map(|&g| format!("g{g}")).collect::<Vec<_>>().join(" ")
        + &format!(" ({})", {
            let (s, t) = pres.endpoints(w).expect("composable");
            format!("{} -> {}", p.signs(s), p.signs(t))
        })
}

fn groupoid_cmd(p: &FacePoset, kind: PresentationArg) -> CmdResult {
    let pres = match kind {
        PresentationArg::Salvetti => salvetti_presentation(p)?,
        PresentationArg::Collinearity => collinearity_presentation(p)?,
    };
    let l = |c: usize| p.signs(c).to_string();
    let mut text = format!(
        "{} objects, {} generators, {} relations\n",
        pres.objects.len(),
        pres.generators.len(),
        pres.relations.len()
    );
    for (i, g) in pres.generators.iter().enumerate() {
        writeln!(text, "g{i}: {} -> {}", l(g.source), l(g.target)).unwrap();
    }
    for r in &pres.relations {
        writeln!(text, "{} = {}", word_text(p, &pres, &r.lhs), word_text(p, &pres, &r.rhs)).unwrap();
    }
    let data = json!({
        "objects": pres.objects.iter().map(|&c| l(c)).collect::<Vec<_>>(),
        "generators": pres.generators.iter().map(|g| json!({ "source": l(g.source), "target": l(g.target) })).collect::<Vec<_>>(),
        "relations": pres.relations.iter().map(|r| json!({ "lhs": r.lhs, "rhs": r.rhs })).collect::<Vec<_>>(),
    });
    Ok(Report::new(true, text, data))
}

fn word_cmd(p: &FacePoset, from: &str, to: &str) -> CmdResult {
    let (a, b) = (face(p, from)?, face(p, to)?);
    let pres = salvetti_presentation(p)?;
    let path = crossing_path(p, a, b)?;
    let word = pres.word_through(p, &path)?;
    let dist = chamber_distance(p, a, b)?;
    let names: Vec<String> = path.iter().map(|&c| p.signs(c).to_string()).collect();
    let text = format!(
        "path: {}\nword: {}\nlength: {} (chamber distance {dist})\n",
        names.join(" -> "),
        word_text(p, &pres, &word),
        word.len()
    );
    Ok(Report::new(true, text, json!({ "path": names, "word": word, "length": word.len(), "chamber_distance": dist })))
}

fn b_object(b: &Idempotents) -> Result<BObject, InputError> {
    let pp = parse_matrix(&b.p_plus, None).map_err(|m| InputError(format!("--p-plus: {m}")))?;
    let pm = parse_matrix(&b.p_minus, None).map_err(|m| InputError(format!("--p-minus: {m}")))?;
    Ok(BObject::new(pp, pm)?)
}

fn b_report(b: &BObject) -> Report {
    let text = format!("E0: {}\nP+: {}\nP-: {}\n", b.e0, b.p_plus, b.p_minus);
    Report::new(true, text, json!({ "e0": b.e0, "p_plus": b.p_plus.to_string(), "p_minus": b.p_minus.to_string() }))
}

fn p_report(p: &PObject) -> Report {
    let text = format!("Phi: {}\nPsi: {}\nu: {}\nv: {}\nmonodromy: {}\n", p.phi, p.psi, p.u, p.v, p.monodromy());
    let data = json!({
        "phi": p.phi, "psi": p.psi, "u": p.u.to_string(), "v": p.v.to_string(),
        "monodromy": p.monodromy().to_string(),
    });
    Report::new(true, text, data)
}

fn onedim_cmd(op: &OnedimOp) -> CmdResult {
    match op {
        OnedimOp::ToB { u, v, phi, psi } => {
            let u0 = parse_matrix(u, None).map_err(|m| InputError(format!("--u: {m}")))?;
            let v0 = parse_matrix(v, None).map_err(|m| InputError(format!("--v: {m}")))?;
            let phi =
                phi.or((u0.rows() > 0).then_some(u0.rows())).or((v0.cols() > 0).then_some(v0.cols())).unwrap_or(0);
            let psi =
                psi.or((v0.rows() > 0).then_some(v0.rows())).or((u0.cols() > 0).then_some(u0.cols())).unwrap_or(0);
            let u = parse_matrix(u, Some((phi, psi))).map_err(|m| InputError(format!("--u: {m}")))?;
            let v = parse_matrix(v, Some((psi, phi))).map_err(|m| InputError(format!("--v: {m}")))?;
            Ok(b_report(&to_b(&PObject::new(u, v)?)))
        }
        OnedimOp::ToP { b, minus } => {
            let b = b_object(b)?;
            Ok(p_report(&if *minus { to_p_minus(&b)? } else { to_p(&b)? }))
        }
        OnedimOp::Fourier { b } => Ok(b_report(&b_object(b)?.fourier())),
        OnedimOp::ToQuiver { b } => Ok(quiver_report(&to_quiver(&b_object(b)?)?)),
    }
}

fn dispatch(cli: &Cli) -> CmdResult {
    let ctx = Ctx {
        mode: cli.mode.map(|m| match m {
            ModeArg::Linear => Mode::Linear,
            ModeArg::Affine => Mode::Affine,
        }),
        field: cli.field,
    };
    let f = cli.field;
    match &cli.command {
        Command::Faces { arrangement } => Ok(faces_cmd(&ctx.poset(arrangement)?)),
        Command::Flats { arrangement } => Ok(flats_cmd(&ctx.arrangement(arrangement)?)),
        Command::Compose { arrangement, c, d } => {
            let p = ctx.poset(arrangement)?;
            let r = p.compose(face(&p, c)?, face(&p, d)?);
            let s = p.signs(r).to_string();
            Ok(Report::new(true, format!("{c} o {d} = {s}\n"), json!({ "c": c, "d": d, "result": s })))
        }
        Command::Collinear { arrangement, a, b, c } => {
            let p = ctx.poset(arrangement)?;
            let v = collinear(&p, face(&p, a)?, face(&p, b)?, face(&p, c)?);
            Ok(Report::new(
                v,
                format!("collinear({a}, {b}, {c}): {v}\n"),
                json!({ "triple": [a, b, c], "collinear": v }),
            ))
        }
        Command::Validate { quiver } => Ok(validate_cmd(&ctx.quiver(quiver)?, f)),
        Command::Cousin { quiver } => cousin_cmd(&ctx.quiver(quiver)?, f),
        Command::Stalks { quiver } => stalks_cmd(&ctx.quiver(quiver)?, f),
        Command::Smooth { quiver } => smooth_cmd(&ctx.quiver(quiver)?, f),
        Command::Perversity { quiver } => perversity_cmd(&ctx.quiver(quiver)?, f),
        Command::Restrict { quiver, flat, face } => {
            restrict_cmd(&ctx.quiver(quiver)?, flat.as_deref(), face.as_deref())
        }
        Command::Slice { quiver, face: key } => {
            let q = ctx.quiver(quiver)?;
            let c = face(q.poset(), key)?;
            Ok(quiver_report(&slice(&q, c)?))
        }
        Command::Dual { quiver } => Ok(quiver_report(&ctx.quiver(quiver)?.dual())),
        Command::Mult { quiver } => Ok(mult_cmd(&ctx.quiver(quiver)?)),
        Command::Groupoid { arrangement, presentation } => groupoid_cmd(&ctx.poset(arrangement)?, *presentation),
        Command::Word { arrangement, from, to } => word_cmd(&ctx.poset(arrangement)?, from, to),
        Command::Onedim { op } => onedim_cmd(op),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Faces { .. } => "faces",
        Command::Flats { .. } => "flats",
        Command::Compose { .. } => "compose",
        Command::Collinear { .. } => "collinear",
        Command::Validate { .. } => "validate",
        Command::Cousin { .. } => "cousin",
        Command::Stalks { .. } => "stalks",
        Command::Smooth { .. } => "smooth",
        Command::Perversity { .. } => "perversity",
        Command::Restrict { .. } => "restrict",
        Command::Slice { .. } => "slice",
        Command::Dual { .. } => "dual",
        Command::Mult { .. } => "mult",
        Command::Groupoid { .. } => "groupoid",
        Command::Word { .. } => "word",
        Command::Onedim { op: OnedimOp::ToB { .. } } => "onedim to-b",
        Command::Onedim { op: OnedimOp::ToP { .. } } => "onedim to-p",
        Command::Onedim { op: OnedimOp::Fourier { .. } } => "onedim fourier",
        Command::Onedim { op: OnedimOp::ToQuiver { .. } } => "onedim to-quiver",
    }
}

/// Parses arguments (the first is the program name), runs the command and
/// renders the report. Exit status: 0 on success or a true verdict, 1 on a
/// false verdict, 2 on input errors.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let stdout = match cli.format {
                FormatArg::Text => report.text.clone(),
                FormatArg::Structured => report.structured(command_name(&cli.command)),
            };
            Outcome { code: if report.ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(InputError(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
    }
}
