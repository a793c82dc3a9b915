//! Input documents: `{"version": "1", "kind": ..., "payload": ...}`.
use std::collections::BTreeMap;

use serde_json::Value;
use twistdef::dgla::{BracketEntry, RawDgla, TensorElement};
use twistdef::homalg::{AlgMatrix, CommAlgebra};
use twistdef::scosim::{RawTower, ScMc1Data};
use twistdef::twisted::{Face, RawNerve, TwistedComplex};
use twistdef::{ArtinAlgebra, Dgla, GradedSpace, LinearMap, Matrix, Scalar};

use crate::json::{each, entries, field, opt_field, parse_text, At, InputError};

/// Size limits on decoded documents.
pub const MAX_BASIS: usize = 256;
pub const MAX_VERTICES: usize = 24;
pub const MAX_RANK: usize = 6;
pub const MAX_LEVELS: usize = 5;
pub const MAX_ALGEBRA_DIM: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Dgla,
    Artin,
    Tower,
    Nerve,
    Brauer,
    Bundle,
    Complex,
    Pairing,
}

impl Kind {
    pub const ALL: [Kind; 8] =
        [Kind::Dgla, Kind::Artin, Kind::Tower, Kind::Nerve, Kind::Brauer, Kind::Bundle, Kind::Complex, Kind::Pairing];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Dgla => "dgla",
            Kind::Artin => "artin",
            Kind::Tower => "tower",
            Kind::Nerve => "nerve",
            Kind::Brauer => "brauer",
            Kind::Bundle => "bundle",
            Kind::Complex => "complex",
            Kind::Pairing => "pairing",
        }
    }

    fn from_name(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }
}

#[derive(Clone, Debug)]
pub struct McDoc {
    pub artin: ArtinAlgebra,
    pub data: ScMc1Data,
    pub other: Option<ScMc1Data>,
}

#[derive(Clone, Debug)]
pub struct TowerDoc {
    pub raw: RawTower,
    pub mc: Option<McDoc>,
}

/// Nerve, twist and (for bundles and complexes) gluing data.
#[derive(Clone, Debug)]
pub struct TwistedDoc {
    pub nerve: RawNerve,
    pub alpha: BTreeMap<Face, Vec<Scalar>>,
    pub complex: Option<TwistedComplex>,
}

#[derive(Clone, Debug)]
pub struct PairingDoc {
    pub dgla: RawDgla,
    pub entries: Vec<(String, String, Scalar)>,
}

#[derive(Clone, Debug)]
pub enum Payload {
    Dgla(RawDgla),
    Artin(ArtinAlgebra),
    Tower(TowerDoc),
    Nerve(RawNerve),
    Twisted(TwistedDoc),
    Pairing(PairingDoc),
}

#[derive(Clone, Debug)]
pub struct Document {
    pub kind: Kind,
    pub payload: Payload,
}

/// Parses and decodes a document. `max_nil` bounds the nilpotency index of any Artinian
/// algebra in it.
pub fn parse_document(text: &str, max_nil: usize) -> Result<Document, InputError> {
    let value: Value = parse_text(text)?;
    let root = At::root(&value);
    root.only(&["version", "kind", "payload"])?;
    field(&root, "version", |v| match v.str()? {
        "1" => Ok(()),
        other => Err(v.error(format!("unsupported version {other:?}"))),
    })?;
    let kind = field(&root, "kind", |k| {
        let s = k.str()?;
        Kind::from_name(s).ok_or_else(|| k.error(format!("unknown kind {s:?}")))
    })?;
    let payload = field(&root, "payload", |p| match kind {
        Kind::Dgla => dgla(p).map(Payload::Dgla),
        Kind::Artin => artin(p, max_nil).map(Payload::Artin),
        Kind::Tower => tower(p, max_nil).map(Payload::Tower),
        Kind::Nerve => nerve(p).map(Payload::Nerve),
        Kind::Brauer | Kind::Bundle | Kind::Complex => twisted(p, kind).map(Payload::Twisted),
        Kind::Pairing => pairing(p).map(Payload::Pairing),
    })?;
    Ok(Document { kind, payload })
}

fn core(at: &At, e: twistdef::Error) -> InputError {
    at.error(e.to_string())
}

/// `{label: coefficient}` resolved against `space`.
fn sparse(at: &At, space: &GradedSpace) -> Result<Vec<(usize, Scalar)>, InputError> {
    entries(at, |label, c| {
        let i = space.index_of(label).ok_or_else(|| c.error(format!("unknown basis label {label:?}")))?;
        Ok((i, c.scalar()?))
    })
}

fn basis(at: &At) -> Result<GradedSpace, InputError> {
    let mut labels: BTreeMap<i32, Vec<String>> = BTreeMap::new();
    let mut total = 0;
    entries(at, |deg, ls| {
        let d: i32 = deg.trim().parse().map_err(|_| ls.error(format!("degree key {deg:?} is not an integer")))?;
        let names = each(ls, |l| Ok(l.str()?.to_string()))?;
        total += names.len();
        labels.entry(d).or_default().extend(names);
        Ok(())
    })?;
    if total > MAX_BASIS {
        return Err(at.error(format!("more than {MAX_BASIS} basis elements")));
    }
    GradedSpace::new(labels).map_err(|e| core(at, e))
}

fn dgla(at: &At) -> Result<RawDgla, InputError> {
    at.only(&["basis", "differential", "brackets"])?;
    let space = field(at, "basis", basis)?;
    let mut differential: BTreeMap<i32, Matrix> = BTreeMap::new();
    opt_field(at, "differential", |d| {
        entries(d, |x, image| {
            let i = space.index_of(x).ok_or_else(|| image.error(format!("unknown basis label {x:?}")))?;
            let p = space.degree_of(i);
            for (j, c) in sparse(image, &space)? {
                if space.degree_of(j) != p + 1 {
                    return Err(image.error(format!("d({x}) has a term {} outside degree {}", space.label(j), p + 1)));
                }
                let block = differential.entry(p).or_insert_with(|| Matrix::zeros(space.dim(p + 1), space.dim(p)));
                block[(j - space.offset(p + 1), i - space.offset(p))] += c;
            }
            Ok(())
        })
    })?;
    let brackets = opt_field(at, "brackets", |b| {
        each(b, |e| {
            e.only(&["x", "y", "value"])?;
            let label = |name: &str| {
                field(e, name, |l| {
                    let s = l.str()?;
                    space.index_of(s).ok_or_else(|| l.error(format!("unknown basis label {s:?}")))?;
                    Ok(s.to_string())
                })
            };
            let (x, y) = (label("x")?, label("y")?);
            let value = field(e, "value", |v| sparse(v, &space))?
                .into_iter()
                .map(|(i, c)| (space.label(i).to_string(), c))
                .collect();
            Ok(BracketEntry { x, y, value })
        })
    })?
    .unwrap_or_default();
    Ok(RawDgla { space, differential, brackets })
}

fn artin(at: &At, max_nil: usize) -> Result<ArtinAlgebra, InputError> {
    at.only(&["presentation", "name", "basis", "products"])?;
    let a = if let Some(p) = opt_field(at, "presentation", |p| Ok(p.str()?.to_string()))? {
        ArtinAlgebra::parse(&p).map_err(|e| core(at, e))?
    } else {
        let labels = field(at, "basis", |b| each(b, |l| Ok(l.str()?.to_string())))?;
        if labels.len() > MAX_ALGEBRA_DIM * MAX_ALGEBRA_DIM {
            return Err(at.error("Artinian algebra is too large"));
        }
        let name = opt_field(at, "name", |n| Ok(n.str()?.to_string()))?.unwrap_or_else(|| "A".into());
        let n = labels.len();
        let idx = |l: &At| {
            let s = l.str()?;
            labels.iter().position(|x| x == s).ok_or_else(|| l.error(format!("unknown basis label {s:?}")))
        };
        let mut table = vec![vec![vec![Scalar::default(); n]; n]; n];
        opt_field(at, "products", |ps| {
            each(ps, |e| {
                e.only(&["x", "y", "value"])?;
                let i = field(e, "x", idx)?;
                let j = field(e, "y", idx)?;
                let v = field(e, "value", |v| {
                    entries(v, |k, c| {
                        let k = labels.iter().position(|x| x == k).ok_or_else(|| c.error(format!("unknown basis label {k:?}")))?;
                        Ok((k, c.scalar()?))
                    })
                })?;
                for (k, c) in v {
                    table[i][j][k] = c.clone();
                    table[j][i][k] = c;
                }
                Ok(())
            })
        })?;
        ArtinAlgebra::from_table(&name, labels, table).map_err(|e| core(at, e))?
    };
    if a.nil_index() > max_nil {
        return Err(at.error(format!("nilpotency index {} exceeds the cap {max_nil}", a.nil_index())));
    }
    Ok(a)
}

fn linear_map(at: &At, source: &GradedSpace, target: &GradedSpace) -> Result<LinearMap, InputError> {
    let mut m = Matrix::zeros(target.total_dim(), source.total_dim());
    entries(at, |x, image| {
        let i = source.index_of(x).ok_or_else(|| image.error(format!("unknown basis label {x:?}")))?;
        for (j, c) in sparse(image, target)? {
            m[(j, i)] += c;
        }
        Ok(())
    })?;
    LinearMap::from_global(source.clone(), target.clone(), 0, &m).map_err(|e| core(at, e))
}

fn tensor(at: &At, l: &Dgla, a: &ArtinAlgebra) -> Result<TensorElement, InputError> {
    let mut columns = vec![vec![Scalar::default(); l.dim()]; a.dim()];
    entries(at, |label, v| {
        let q = a.index_of(label).ok_or_else(|| v.error(format!("unknown basis label {label:?} of the Artinian algebra")))?;
        for (i, c) in sparse(v, l.space())? {
            columns[q][i] += c;
        }
        Ok(())
    })?;
    Ok(TensorElement { columns })
}

fn mc_data(at: &At, levels: &[Dgla], a: &ArtinAlgebra) -> Result<ScMc1Data, InputError> {
    at.only(&["l", "m", "witness"])?;
    if levels.len() < 3 {
        return Err(at.error("Maurer-Cartan data needs levels 0, 1 and 2"));
    }
    Ok(ScMc1Data {
        l: opt_field(at, "l", |v| tensor(v, &levels[0], a))?.unwrap_or_else(|| TensorElement::zero(&levels[0], a)),
        m: opt_field(at, "m", |v| tensor(v, &levels[1], a))?.unwrap_or_else(|| TensorElement::zero(&levels[1], a)),
        witness: opt_field(at, "witness", |v| tensor(v, &levels[2], a))?,
    })
}

fn tower(at: &At, max_nil: usize) -> Result<TowerDoc, InputError> {
    at.only(&["levels", "faces", "artin", "mc", "mc_other"])?;
    let levels = field(at, "levels", |ls| {
        each(ls, |l| {
            let raw = dgla(l)?;
            Dgla::new(&raw).map_err(|e| core(l, e))
        })
    })?;
    if levels.is_empty() || levels.len() > MAX_LEVELS + 1 {
        return Err(at.error(format!("a tower has between 1 and {} levels", MAX_LEVELS + 1)));
    }
    let mut faces = vec![Vec::new()];
    field(at, "faces", |fs| {
        if fs.array()?.len() + 1 != levels.len() {
            return Err(fs.error(format!("expected face lists for levels 1..={}", levels.len() - 1)));
        }
        let mut n = 0;
        each(fs, |f| {
            n += 1;
            let maps = each(f, |m| linear_map(m, levels[n - 1].space(), levels[n].space()))?;
            if maps.len() != n + 1 {
                return Err(f.error(format!("level {n} needs {} faces", n + 1)));
            }
            faces.push(maps);
            Ok(())
        })
    })?;
    let artin = opt_field(at, "artin", |a| artin(a, max_nil))?;
    let mc = match artin {
        None => {
            if at.object()?.contains_key("mc") {
                return Err(at.error("\"mc\" needs \"artin\""));
            }
            None
        }
        Some(a) => {
            let data = field(at, "mc", |m| mc_data(m, &levels, &a))?;
            let other = opt_field(at, "mc_other", |m| mc_data(m, &levels, &a))?;
            Some(McDoc { artin: a, data, other })
        }
    };
    Ok(TowerDoc { raw: RawTower { levels, faces }, mc })
}

fn comm_algebra(at: &At) -> Result<CommAlgebra, InputError> {
    at.only(&["truncated", "basis", "products", "unit"])?;
    if let Some(n) = opt_field(at, "truncated", |x| x.usize())? {
        if !(1..=MAX_ALGEBRA_DIM).contains(&n) {
            return Err(at.error(format!("truncation must lie in 1..={MAX_ALGEBRA_DIM}")));
        }
        return Ok(CommAlgebra::truncated_polynomials(n));
    }
    let labels = field(at, "basis", |b| each(b, |l| Ok(l.str()?.to_string())))?;
    let n = labels.len();
    if n > MAX_ALGEBRA_DIM {
        return Err(at.error(format!("algebras have dimension at most {MAX_ALGEBRA_DIM}")));
    }
    let idx = |k: &str, at: &At| labels.iter().position(|x| x == k).ok_or_else(|| at.error(format!("unknown basis label {k:?}")));
    let vector = |v: &At| -> Result<Vec<Scalar>, InputError> {
        let mut out = vec![Scalar::default(); n];
        entries(v, |k, c| {
            out[idx(k, c)?] = c.scalar()?;
            Ok(())
        })?;
        Ok(out)
    };
    let mut table = vec![vec![vec![Scalar::default(); n]; n]; n];
    opt_field(at, "products", |ps| {
        each(ps, |e| {
            e.only(&["x", "y", "value"])?;
            let i = field(e, "x", |l| idx(l.str()?, l))?;
            let j = field(e, "y", |l| idx(l.str()?, l))?;
            let v = field(e, "value", vector)?;
            table[i][j] = v.clone();
            table[j][i] = v;
            Ok(())
        })
    })?;
    let unit = field(at, "unit", vector)?;
    CommAlgebra::new(labels, table, unit).map_err(|e| core(at, e))
}

fn vertex_index(at: &At, vertices: &[String]) -> Result<usize, InputError> {
    let s = at.str()?;
    vertices.iter().position(|v| v == s).ok_or_else(|| at.error(format!("unknown vertex {s:?}")))
}

/// A face as a list of vertex labels, sorted by vertex position.
fn face(at: &At, vertices: &[String]) -> Result<Face, InputError> {
    let mut f = each(at, |v| vertex_index(v, vertices))?;
    f.sort_unstable();
    if f.is_empty() || f.windows(2).any(|w| w[0] == w[1]) {
        return Err(at.error("a face lists distinct vertices"));
    }
    Ok(f)
}

fn matrix(at: &At) -> Result<Matrix, InputError> {
    let rows = each(at, |r| each(r, |x| x.scalar()))?;
    let c = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != c) {
        return Err(at.error("rows have different lengths"));
    }
    let mut m = Matrix::zeros(rows.len(), c);
    for (i, r) in rows.into_iter().enumerate() {
        for (j, x) in r.into_iter().enumerate() {
            m[(i, j)] = x;
        }
    }
    Ok(m)
}

/// Listed faces together with all their nonempty subfaces.
fn closure(listed: Vec<Face>) -> Vec<Face> {
    let mut out = std::collections::BTreeSet::new();
    for f in listed {
        for mask in 1u32..(1 << f.len()) {
            out.insert(f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v).collect::<Face>());
        }
    }
    out.into_iter().collect()
}

fn nerve(at: &At) -> Result<RawNerve, InputError> {
    at.only(&["vertices", "faces", "algebras", "restrictions"])?;
    let vertices = field(at, "vertices", |vs| each(vs, |v| Ok(v.str()?.to_string())))?;
    if vertices.is_empty() || vertices.len() > MAX_VERTICES {
        return Err(at.error(format!("a nerve has between 1 and {MAX_VERTICES} vertices")));
    }
    let listed = opt_field(at, "faces", |fs| each(fs, |f| face(f, &vertices)))?.unwrap_or_default();
    if listed.iter().any(|f| f.len() > 4) {
        return Err(at.error("faces have at most four vertices"));
    }
    let faces = closure(listed);
    let algebras = opt_field(at, "algebras", |xs| {
        each(xs, |e| {
            e.only(&["face", "algebra"])?;
            Ok((field(e, "face", |f| face(f, &vertices))?, field(e, "algebra", comm_algebra)?))
        })
    })?
    .unwrap_or_default()
    .into_iter()
    .collect();
    let restrictions = opt_field(at, "restrictions", |xs| {
        each(xs, |e| {
            e.only(&["from", "to", "matrix"])?;
            let from = field(e, "from", |f| face(f, &vertices))?;
            let to = field(e, "to", |f| face(f, &vertices))?;
            Ok(((from, to), field(e, "matrix", matrix)?))
        })
    })?
    .unwrap_or_default()
    .into_iter()
    .collect();
    Ok(RawNerve { vertices, faces, algebras, restrictions })
}

fn algebra_of(raw: &RawNerve, f: &[usize]) -> CommAlgebra {
    raw.algebras.get(f).cloned().unwrap_or_else(CommAlgebra::rationals)
}

/// A scalar (times the unit) or a coordinate array in `alg`.
fn element(at: &At, alg: &CommAlgebra) -> Result<Vec<Scalar>, InputError> {
    if at.value.is_array() {
        let v = each(at, |x| x.scalar())?;
        if v.len() != alg.dim() {
            return Err(at.error(format!("expected {} coordinates", alg.dim())));
        }
        Ok(v)
    } else {
        Ok(alg.scalar(&at.scalar()?))
    }
}

fn alg_matrix(at: &At, alg: &CommAlgebra, r: usize) -> Result<AlgMatrix, InputError> {
    let rows = each(at, |row| each(row, |x| element(x, alg)))?;
    if rows.len() != r || rows.iter().any(|row| row.len() != r) {
        return Err(at.error(format!("expected a {r}x{r} matrix")));
    }
    Ok(AlgMatrix { rows: r, cols: r, entries: rows.into_iter().flatten().collect() })
}

fn twisted(at: &At, kind: Kind) -> Result<TwistedDoc, InputError> {
    let mut allowed = vec!["nerve", "alpha"];
    if kind != Kind::Brauer {
        allowed.extend(["rank", "transitions"]);
    }
    if kind == Kind::Complex {
        allowed.extend(["degrees", "differentials"]);
    }
    at.only(&allowed)?;
    let raw = field(at, "nerve", nerve)?;
    let vertices = raw.vertices.clone();
    let alpha = opt_field(at, "alpha", |xs| {
        each(xs, |e| {
            e.only(&["face", "value"])?;
            let f = field(e, "face", |f| face(f, &vertices))?;
            let alg = algebra_of(&raw, &f);
            Ok((f, field(e, "value", |v| element(v, &alg))?))
        })
    })?
    .unwrap_or_default()
    .into_iter()
    .collect();
    let complex = if kind == Kind::Brauer {
        None
    } else {
        let degrees = if kind == Kind::Complex {
            field(at, "degrees", |d| each(d, |x| x.i32()))?
        } else {
            let rank = field(at, "rank", |x| x.usize())?;
            if rank > MAX_RANK {
                return Err(at.error(format!("rank must lie in 1..={MAX_RANK}")));
            }
            vec![0; rank]
        };
        let r = degrees.len();
        if r == 0 || r > MAX_RANK {
            return Err(at.error(format!("rank must lie in 1..={MAX_RANK}")));
        }
        if kind == Kind::Complex {
            if let Some(rank) = opt_field(at, "rank", |x| x.usize())? {
                if rank != r {
                    return Err(at.error("rank differs from the number of degrees"));
                }
            }
        }
        let transitions = field(at, "transitions", |xs| {
            each(xs, |e| {
                e.only(&["edge", "matrix"])?;
                let edge = field(e, "edge", |f| {
                    let ids = each(f, |v| vertex_index(v, &vertices))?;
                    if ids.len() != 2 || ids[0] >= ids[1] {
                        return Err(f.error("an edge lists two vertices in increasing order"));
                    }
                    Ok((ids[0], ids[1]))
                })?;
                let alg = algebra_of(&raw, &[edge.0, edge.1]);
                Ok((edge, field(e, "matrix", |m| alg_matrix(m, &alg, r))?))
            })
        })?
        .into_iter()
        .collect();
        let differentials = opt_field(at, "differentials", |xs| {
            each(xs, |e| {
                e.only(&["vertex", "matrix"])?;
                let v = field(e, "vertex", |v| vertex_index(v, &vertices))?;
                let alg = algebra_of(&raw, &[v]);
                Ok((v, field(e, "matrix", |m| alg_matrix(m, &alg, r))?))
            })
        })?
        .unwrap_or_default()
        .into_iter()
        .collect();
        Some(TwistedComplex { degrees, differentials, transitions })
    };
    Ok(TwistedDoc { nerve: raw, alpha, complex })
}

fn pairing(at: &At) -> Result<PairingDoc, InputError> {
    at.only(&["dgla", "entries"])?;
    let raw = field(at, "dgla", dgla)?;
    let entries = field(at, "entries", |xs| {
        each(xs, |e| {
            e.only(&["x", "y", "value"])?;
            let label = |name: &str| {
                field(e, name, |l| {
                    let s = l.str()?;
                    raw.space.index_of(s).ok_or_else(|| l.error(format!("unknown basis label {s:?}")))?;
                    Ok(s.to_string())
                })
            };
            Ok((label("x")?, label("y")?, field(e, "value", |x| x.scalar())?))
        })
    })?;
    Ok(PairingDoc { dgla: raw, entries })
}
