//! One function per command; each turns a decoded document into a [`Report`].
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};
use twistdef::defart::{lift_order, primary_obstruction, tangent_space};
use twistdef::dgla::{check_axioms, check_cyclic_pairing, Violation};
use twistdef::homalg::AlgMatrix;
use twistdef::scosim::{
    cech_complex, check_semicosimplicial, h1sc_equiv, whitney_integrate_cochain, whitney_section_cochain, z1sc_check,
    RawTower, ThomWhitney,
};
use twistdef::twisted::{
    compare_first_order, obstruction_second_order, validate_brauer, validate_complex, validate_nerve, z1sc_bridge,
    ArtinDeformation, BracketKind, BrauerCocycle, FirstOrderDeformation, FirstOrderOracle, Gluing, RingedNerve,
    SignSearch, end_tower,
};
use twistdef::{ArtinAlgebra, Dgla, Error, Scalar, SemicosimplicialDgla};

use crate::report::{expression, scalar, scalars, sparse, Report};
use crate::schema::{Document, Kind, Payload, TowerDoc, TwistedDoc};

pub const COMMANDS: [&str; 12] = [
    "check",
    "cohomology",
    "tangent",
    "obstruct",
    "lift",
    "h1sc-check",
    "h1sc-equiv",
    "tot",
    "whitney-roundtrip",
    "deform",
    "compare-theorem",
    "pairing-check",
];

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug)]
pub struct Options {
    pub xi: Option<String>,
    pub order: Option<usize>,
    pub levels: Option<usize>,
    pub polydeg: Option<usize>,
    pub seed: u64,
    pub max_nil: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options { xi: None, order: None, levels: None, polydeg: None, seed: DEFAULT_SEED, max_nil: twistdef::MAX_NIL_INDEX }
    }
}

type Outcome = Result<Report, Error>;

pub fn run(command: &str, doc: &Document, opts: &Options) -> Report {
    let out = match command {
        "check" => check(doc),
        "cohomology" => cohomology(doc, opts),
        "tangent" => tangent(doc, opts),
        "obstruct" => obstruct(doc, opts),
        "lift" => lift(doc, opts),
        "h1sc-check" => h1sc_check(doc),
        "h1sc-equiv" => h1sc_equivalence(doc),
        "tot" => tot(doc, opts),
        "whitney-roundtrip" => whitney_roundtrip(doc, opts),
        "deform" => deform(doc),
        "compare-theorem" => compare_theorem(doc, opts),
        "pairing-check" => pairing_check(doc),
        other => Err(Error::Input(format!("unknown command {other:?}"))),
    };
    out.unwrap_or_else(|e| Report::error(command, e.to_string()))
}

fn wrong_kind(command: &str, kind: Kind) -> Error {
    Error::Input(format!("{command} does not accept documents of kind {:?}", kind.name()))
}

fn violation_json(v: &Violation) -> Value {
    json!({
        "identity": v.identity,
        "witness": v.witness,
        "defect": Value::Object(v.defect.iter().map(|(l, c)| (l.clone(), scalar(c))).collect()),
    })
}

fn betti(c: &twistdef::CochainComplex) -> Value {
    Value::Object(c.degrees().into_iter().map(|n| (n.to_string(), Value::from(c.betti(n)))).collect())
}

fn tower_of(t: &TowerDoc) -> Result<SemicosimplicialDgla, Error> {
    SemicosimplicialDgla::new(t.raw.clone())
}

fn gluing_of(t: &TwistedDoc) -> Result<Gluing, Error> {
    let nerve = RingedNerve::new(&t.nerve)?;
    let alpha = BrauerCocycle::new(&nerve, t.alpha.clone())?;
    let c = t.complex.as_ref().ok_or_else(|| Error::Input("document carries no gluing data".into()))?;
    Gluing::new(&nerve, &alpha, c)
}

/// Tower named by the document: given directly, or the endomorphism tower of a bundle or
/// complex with levels `0..=levels`.
fn any_tower(command: &str, doc: &Document, levels: usize) -> Result<SemicosimplicialDgla, Error> {
    match &doc.payload {
        Payload::Tower(t) => tower_of(t),
        Payload::Twisted(t) if t.complex.is_some() => end_tower(&gluing_of(t)?, levels, BracketKind::Commutator),
        _ => Err(wrong_kind(command, doc.kind)),
    }
}

fn levels_option(opts: &Options) -> Result<usize, Error> {
    let n = opts.levels.unwrap_or(2);
    if n > crate::schema::MAX_LEVELS {
        return Err(Error::Unsupported(format!("--levels at most {}", crate::schema::MAX_LEVELS)));
    }
    Ok(n)
}

fn check(doc: &Document) -> Outcome {
    let mut r = Report::new("check");
    r.set("kind", doc.kind.name());
    match &doc.payload {
        Payload::Dgla(raw) => {
            let report = check_axioms(raw)?;
            r.set("dimension", raw.space.total_dim());
            for v in &report.violations {
                r.violate(violation_json(v));
            }
        }
        Payload::Artin(a) => {
            r.set("dimension", a.dim()).set("nil_index", a.nil_index()).set("labels", a.labels().to_vec());
        }
        Payload::Tower(t) => {
            let report = check_semicosimplicial(&t.raw)?;
            r.set("levels", t.raw.levels.len());
            for v in &report.violations {
                r.violate(json!({"h": v.h, "k": v.k, "n": v.n, "witness": v.witness}));
            }
            if report.is_valid() {
                let cech = cech_complex(&tower_of(t)?)?;
                r.set("cech_betti", betti(&cech.complex));
            }
        }
        Payload::Nerve(raw) => {
            let report = validate_nerve(raw);
            for v in &report.violations {
                r.violate(v.clone());
            }
            if report.is_valid() {
                let n = RingedNerve::new(raw)?;
                r.set("faces", n.faces().len()).set("dimension", n.dimension());
            }
        }
        Payload::Twisted(t) => {
            let nr = validate_nerve(&t.nerve);
            if !nr.is_valid() {
                for v in &nr.violations {
                    r.violate(v.clone());
                }
                return Ok(r);
            }
            let nerve = RingedNerve::new(&t.nerve)?;
            let alpha = BrauerCocycle::new(&nerve, t.alpha.clone())?;
            let br = validate_brauer(&nerve, &alpha);
            for v in &br.check.violations {
                r.violate(v.clone());
            }
            r.set("alpha_witnesses", br.witnesses.iter().map(|f| nerve.show(f)).collect::<Vec<_>>());
            match &br.search {
                SignSearch::NotApplicable(why) => r.set("coboundary", "not applicable").set("search", why.clone()),
                SignSearch::Coboundary(_) => r.set("coboundary", true),
                SignSearch::NotCoboundary { assignments } => {
                    r.set("coboundary", false).set("assignments", *assignments)
                }
            };
            if let Some(c) = &t.complex {
                let report = validate_complex(&nerve, &alpha, c);
                for v in &report.violations {
                    r.violate(v.clone());
                }
                r.set("rank", c.degrees.len());
            }
        }
        Payload::Pairing(p) => return pairing_report("check", p),
    }
    Ok(r)
}

fn pairing_report(command: &str, p: &crate::schema::PairingDoc) -> Outcome {
    let mut r = Report::new(command);
    let dgla = Dgla::new(&p.dgla)?;
    let report = check_cyclic_pairing(&dgla, &p.entries)?;
    r.set("axioms", Value::Object(report.axioms.iter().map(|(k, v)| (k.clone(), Value::from(*v))).collect()));
    for v in &report.violations {
        r.violate(violation_json(v));
    }
    Ok(r)
}

fn pairing_check(doc: &Document) -> Outcome {
    match &doc.payload {
        Payload::Pairing(p) => pairing_report("pairing-check", p),
        _ => Err(wrong_kind("pairing-check", doc.kind)),
    }
}

fn cohomology(doc: &Document, opts: &Options) -> Outcome {
    let mut r = Report::new("cohomology");
    match &doc.payload {
        Payload::Dgla(raw) => {
            let l = Dgla::new(raw)?;
            r.set("betti", betti(l.complex()));
            r.set("bracket_vanishes", l.cohomology_bracket().algebra.is_abelian());
        }
        _ => {
            let g = any_tower("cohomology", doc, levels_option(opts)?)?;
            let cech = cech_complex(&g)?;
            r.set("levels", g.top() + 1).set("betti", betti(&cech.complex));
        }
    }
    Ok(r)
}

fn labelled(space: &twistdef::GradedSpace, degree: i32, local: &[Scalar]) -> Value {
    let o = space.offset(degree);
    sparse(|i| space.label(o + i).to_string(), local)
}

fn tangent(doc: &Document, opts: &Options) -> Outcome {
    let mut r = Report::new("tangent");
    let (space, h1) = match &doc.payload {
        Payload::Dgla(raw) => {
            let l = Dgla::new(raw)?;
            (l.space().clone(), tangent_space(&l))
        }
        _ => {
            let g = any_tower("tangent", doc, levels_option(opts)?.max(2))?;
            let cech = cech_complex(&g)?;
            (cech.complex.space().clone(), cech.complex.cohomology(1))
        }
    };
    r.set("dimension", h1.dimension);
    r.set("basis", h1.representatives.iter().map(|v| labelled(&space, 1, v)).collect::<Vec<_>>());
    Ok(r)
}

/// Tangent classes selected by `--xi` (a degree-1 cocycle label) or the whole basis.
fn dgla_classes(l: &Dgla, xi: &Option<String>) -> Result<Vec<(String, Vec<Scalar>)>, Error> {
    let h1 = tangent_space(l);
    let s = l.space();
    match xi {
        Some(label) => {
            let i = s.index_of(label).ok_or_else(|| Error::Input(format!("unknown basis label {label:?}")))?;
            if s.degree_of(i) != 1 {
                return Err(Error::Input(format!("--xi {label} is not of degree 1")));
            }
            let mut e = vec![Scalar::default(); s.total_dim()];
            e[i] = Scalar::from_integer(1.into());
            if l.d(&e).iter().any(|c| *c != Scalar::default()) {
                return Err(Error::Input(format!("--xi {label} is not a cocycle")));
            }
            Ok(vec![(label.clone(), h1.projection.apply(s.component(&e, 1)))])
        }
        None => Ok((0..h1.dimension)
            .map(|k| {
                let mut v = vec![Scalar::default(); h1.dimension];
                v[k] = Scalar::from_integer(1.into());
                (terms_expr(s, 1, &h1.representatives[k]), v)
            })
            .collect()),
    }
}

fn terms_expr(space: &twistdef::GradedSpace, degree: i32, local: &[Scalar]) -> String {
    let o = space.offset(degree);
    let terms: Vec<(String, Scalar)> = local.iter().enumerate().map(|(i, c)| (space.label(o + i).to_string(), c.clone())).collect();
    expression(&terms)
}

/// Cocycle representing H² coordinates, as an expression.
fn h2_expr(l: &Dgla, class: &[Scalar]) -> String {
    terms_expr(l.space(), 2, &l.cohomology(2).lift(class))
}

/// Oracle basis classes selected by `--xi cK`, or all of them.
fn oracle_classes(o: &FirstOrderOracle, xi: &Option<String>) -> Result<Vec<(String, FirstOrderDeformation)>, Error> {
    let basis = o.basis();
    match xi {
        Some(label) => {
            let k: usize = label
                .strip_prefix('c')
                .and_then(|s| s.parse().ok())
                .filter(|&k| k < basis.len())
                .ok_or_else(|| Error::Input(format!("--xi {label} is not one of c0..c{}", basis.len().saturating_sub(1))))?;
            Ok(vec![(label.clone(), basis[k].clone())])
        }
        None => Ok(basis.into_iter().enumerate().map(|(k, x)| (format!("c{k}"), x)).collect()),
    }
}

fn obstruct(doc: &Document, opts: &Options) -> Outcome {
    let mut r = Report::new("obstruct");
    match &doc.payload {
        Payload::Dgla(raw) => {
            let l = Dgla::new(raw)?;
            let mut found = Vec::new();
            for (name, xi) in dgla_classes(&l, &opts.xi)? {
                let ob = primary_obstruction(&l, &xi)?;
                let e = h2_expr(&l, &ob);
                if ob.iter().any(|c| *c != Scalar::default()) {
                    r.violate(json!({"xi": name, "obstruction": e}));
                }
                found.push(json!({"xi": name, "obstruction": e}));
            }
            r.set("obstructions", found);
        }
        Payload::Twisted(t) if t.complex.is_some() => {
            let o = FirstOrderOracle::new(&gluing_of(t)?)?;
            let mut found = Vec::new();
            for (name, x) in oracle_classes(&o, &opts.xi)? {
                let s = obstruction_second_order(&o, &x, BracketKind::Commutator)?;
                let entry = json!({
                    "xi": name,
                    "model_extends": s.model_extends,
                    "oracle_extends": s.oracle_extends,
                    "agree": s.agree(),
                    "obstruction": Value::Object(s.obstruction.iter().map(|(l, c)| (l.clone(), scalar(c))).collect()),
                });
                if !s.model_extends || !s.agree() {
                    r.violate(entry.clone());
                }
                found.push(entry);
            }
            r.set("obstructions", found);
        }
        _ => return Err(wrong_kind("obstruct", doc.kind)),
    }
    Ok(r)
}

fn lift(doc: &Document, opts: &Options) -> Outcome {
    let Payload::Dgla(raw) = &doc.payload else { return Err(wrong_kind("lift", doc.kind)) };
    let l = Dgla::new(raw)?;
    let k = opts.order.unwrap_or(3);
    if k > opts.max_nil {
        return Err(Error::Unsupported(format!("--order {k} exceeds the nilpotency cap {}", opts.max_nil)));
    }
    let mut r = Report::new("lift");
    r.set("order", k);
    let mut lifts = Vec::new();
    for (name, xi) in dgla_classes(&l, &opts.xi)? {
        let state = lift_order(&l, &xi, k)?;
        let s = l.space();
        let partial: Vec<String> = state.partial_solution.iter().map(|x| terms_expr(s, 1, x)).collect();
        let mut entry = Map::new();
        entry.insert("xi".into(), name.clone().into());
        entry.insert("reached".into(), state.reached.into());
        entry.insert("solution".into(), partial.into());
        if let Some((stage, class)) = &state.obstruction {
            let e = h2_expr(&l, class);
            entry.insert("failing_power".into(), (*stage).into());
            entry.insert("obstruction".into(), e.clone().into());
            if !r.findings.contains_key("obstruction") {
                r.set("obstruction", e.clone());
            }
            r.violate(json!({"xi": name, "failing_power": stage, "obstruction": e}));
        }
        lifts.push(Value::Object(entry));
    }
    r.set("lifts", lifts);
    Ok(r)
}

fn h1sc_check(doc: &Document) -> Outcome {
    let mut r = Report::new("h1sc-check");
    match &doc.payload {
        Payload::Tower(t) => {
            let mc = t.mc.as_ref().ok_or_else(|| Error::Input("tower carries no \"mc\" data".into()))?;
            let g = tower_of(t)?;
            let z = z1sc_check(&g, &mc.artin, &mc.data)?;
            r.set("holds", z.holds);
            if let Some(w) = &z.witness {
                r.set("witness_found", !w.columns.iter().flatten().all(|c| *c == Scalar::default()));
            }
            if !z.holds {
                r.violate(z.reason.unwrap_or_default());
            }
        }
        Payload::Twisted(t) if t.complex.is_some() => {
            let gl = gluing_of(t)?;
            let o = FirstOrderOracle::new(&gl)?;
            let mut checked = 0usize;
            for (name, x) in oracle_classes(&o, &None)? {
                let art = ArtinAlgebra::truncated("t", 2);
                let mut runs = vec![(art.clone(), ArtinDeformation::from_pieces(&gl, &art, &[&x])?)];
                if let Some(y) = o.extend_second_order(&x)? {
                    let art = ArtinAlgebra::truncated("t", 3);
                    runs.push((art.clone(), ArtinDeformation::from_pieces(&gl, &art, &[&x, &y])?));
                }
                for (art, def) in runs {
                    let b = z1sc_bridge(&gl, &art, &def)?;
                    checked += 1;
                    if !b.check.holds {
                        r.violate(json!({"xi": name, "order": art.nil_index() - 1, "reason": b.check.reason}));
                    }
                }
            }
            r.set("deformations_checked", checked);
        }
        _ => return Err(wrong_kind("h1sc-check", doc.kind)),
    }
    Ok(r)
}

fn h1sc_equivalence(doc: &Document) -> Outcome {
    let Payload::Tower(t) = &doc.payload else { return Err(wrong_kind("h1sc-equiv", doc.kind)) };
    let mc = t.mc.as_ref().ok_or_else(|| Error::Input("tower carries no \"mc\" data".into()))?;
    let other = mc.other.as_ref().ok_or_else(|| Error::Input("tower carries no \"mc_other\" data".into()))?;
    let g = tower_of(t)?;
    let mut r = Report::new("h1sc-equiv");
    match h1sc_equiv(&g, &mc.artin, &mc.data, other)? {
        Some(eq) => {
            let cols = |x: &twistdef::dgla::TensorElement, level: usize| {
                let s = g.level(level).space();
                Value::Array(x.columns.iter().map(|c| sparse(|i| s.label(i).to_string(), c)).collect())
            };
            r.set("equivalent", true).set("a", cols(&eq.a, 0)).set("b", cols(&eq.b, 1));
        }
        None => {
            r.set("equivalent", false);
            r.violate("no gauge pair (a, b) relates the two elements");
        }
    }
    Ok(r)
}

fn truncated(g: &SemicosimplicialDgla, n: usize) -> Result<SemicosimplicialDgla, Error> {
    let raw = g.to_raw();
    SemicosimplicialDgla::new(RawTower { levels: raw.levels[..=n].to_vec(), faces: raw.faces[..=n].to_vec() })
}

fn tot(doc: &Document, opts: &Options) -> Outcome {
    let levels = levels_option(opts)?;
    let full = any_tower("tot", doc, levels)?;
    let n = opts.levels.unwrap_or(full.top()).min(full.top());
    let g = truncated(&full, n)?;
    let d = opts.polydeg.unwrap_or(n.max(1));
    if d > 6 {
        return Err(Error::Unsupported("--polydeg at most 6".into()));
    }
    let tw = ThomWhitney::new(&g, n, d)?;
    let cech = cech_complex(&g)?;
    let mut r = Report::new("tot");
    let (tb, cb) = (betti(tw.complex()), betti(&cech.complex));
    r.set("levels", n).set("polydeg", d).set("tot_betti", tb.clone()).set("cech_betti", cb.clone());
    r.set("dgla", tw.dgla(&g).is_ok());
    if tb != cb {
        r.violate(json!({"tot_betti": tb, "cech_betti": cb}));
    }
    Ok(r)
}

fn whitney_roundtrip(doc: &Document, opts: &Options) -> Outcome {
    let g = any_tower("whitney-roundtrip", doc, levels_option(opts)?)?;
    let cech = cech_complex(&g)?;
    let space = cech.complex.space();
    let n = space.total_dim();
    let mut r = Report::new("whitney-roundtrip");
    for i in 0..n {
        let mut c = vec![Scalar::default(); n];
        c[i] = Scalar::from_integer(1.into());
        let x = whitney_section_cochain(&g, &cech, &c, g.top());
        let back = whitney_integrate_cochain(&g, &cech, &x);
        if back != c {
            r.violate(json!({"cochain": space.label(i), "failure": "integrate(section(c)) differs from c"}));
        }
        if whitney_integrate_cochain(&g, &cech, &x.d(&g)) != cech.complex.apply_d(&back) {
            r.violate(json!({"cochain": space.label(i), "failure": "integration does not commute with d"}));
        }
    }
    r.set("cochains", n).set("levels", g.top() + 1);
    Ok(r)
}

fn matrix_json(m: &AlgMatrix) -> Value {
    let entry = |e: &Vec<Scalar>| if e.len() == 1 { scalar(&e[0]) } else { scalars(e) };
    Value::Array((0..m.rows).map(|i| Value::Array((0..m.cols).map(|j| entry(&m.entries[i * m.cols + j])).collect())).collect())
}

fn deformation_json(nerve: &RingedNerve, x: &FirstOrderDeformation) -> Value {
    let l: Map<String, Value> = x.l.iter().filter(|(_, m)| !m.is_zero()).map(|(v, m)| (nerve.show(&[*v]), matrix_json(m))).collect();
    let m: Map<String, Value> =
        x.m.iter().filter(|(_, m)| !m.is_zero()).map(|((i, j), m)| (nerve.show(&[*i, *j]), matrix_json(m))).collect();
    json!({"l": l, "m": m})
}

fn twisted_doc<'a>(command: &str, doc: &'a Document) -> Result<&'a TwistedDoc, Error> {
    match &doc.payload {
        Payload::Twisted(t) if t.complex.is_some() => Ok(t),
        _ => Err(wrong_kind(command, doc.kind)),
    }
}

fn deform(doc: &Document) -> Outcome {
    let gl = gluing_of(twisted_doc("deform", doc)?)?;
    let o = FirstOrderOracle::new(&gl)?;
    let mut r = Report::new("deform");
    r.set("dimension", o.dimension()).set("cocycle_dimension", o.cocycle_dimension()).set("gauge_dimension", o.gauge_dimension());
    r.set("basis", o.basis().iter().map(|x| deformation_json(gl.nerve(), x)).collect::<Vec<_>>());
    Ok(r)
}

fn compare_theorem(doc: &Document, opts: &Options) -> Outcome {
    let gl = gluing_of(twisted_doc("compare-theorem", doc)?)?;
    let o = FirstOrderOracle::new(&gl)?;
    let c = compare_first_order(&o)?;
    let mut r = Report::new("compare-theorem");
    r.set("oracle_dim", c.oracle_dim).set("h1_dim", c.h1_dim).set("image_rank", c.image_rank);
    r.set("first_order_agree", c.agree()).set("seed", opts.seed);
    if !c.agree() {
        r.violate(json!({"first_order": {"oracle_dim": c.oracle_dim, "h1_dim": c.h1_dim, "compatible": c.compatible, "image_rank": c.image_rank}}));
    }
    let dim = o.dimension();
    let mut samples: Vec<Vec<Scalar>> = (0..dim)
        .map(|k| (0..dim).map(|i| Scalar::from_integer(((i == k) as i64).into())).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    if dim > 1 {
        for _ in 0..3 {
            samples.push((0..dim).map(|_| Scalar::from_integer(rng.gen_range(-2i64..=2).into())).collect());
        }
    }
    let mut second = Vec::new();
    for coeffs in samples {
        let x = o.combination(&coeffs);
        let s = obstruction_second_order(&o, &x, BracketKind::Commutator)?;
        let entry = json!({
            "coefficients": scalars(&coeffs),
            "oracle_extends": s.oracle_extends,
            "model_extends": s.model_extends,
            "agree": s.agree(),
        });
        if !s.agree() {
            r.violate(entry.clone());
        }
        second.push(entry);
    }
    r.set("second_order", second);
    Ok(r)
}
