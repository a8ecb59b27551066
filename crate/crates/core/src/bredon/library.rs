//! Bundled complexes for the SU(2) conjugation model and a generator of
//! randomized equivalent documents.
//!
//! Sign convention: a 1-cell runs from its `-1` end to its `+1` end, and a
//! 2-cell lists its edges counterclockwise.

use rand::seq::SliceRandom;
use rand::Rng;

use super::document::{BoundaryEntry, CellEntry, WcwDocument, SCHEMA};
use crate::error::Result;
use crate::root_system::WeylGroup;
use crate::weyl::{ReflectionSubgroup, SubgroupSpec};

fn fixed() -> SubgroupSpec {
    SubgroupSpec::Parabolic(vec![0])
}

fn free() -> SubgroupSpec {
    SubgroupSpec::Parabolic(vec![])
}

fn cell(id: &str, dim: usize, isotropy: SubgroupSpec) -> CellEntry {
    CellEntry { id: id.into(), dim, isotropy }
}

fn face(from: &str, to: &str, translate: &str, mult: i64) -> BoundaryEntry {
    BoundaryEntry { from: from.into(), to: to.into(), translate: translate.into(), mult }
}

fn a1_document(cells: Vec<CellEntry>, boundary: Vec<BoundaryEntry>) -> WcwDocument {
    WcwDocument { schema: SCHEMA.into(), datum: "A1".into(), family: vec![fixed(), free()], cells, boundary }
}

/// A single fixed point.
pub fn point() -> WcwDocument {
    a1_document(vec![cell("P", 0, fixed())], vec![])
}

/// The maximal torus of SU(2) under inversion: fixed points at `0` and
/// `1/2`, one free arc.
pub fn circle() -> WcwDocument {
    a1_document(
        vec![cell("P0", 0, fixed()), cell("P1", 0, fixed()), cell("e", 1, free())],
        vec![face("e", "P1", "e", 1), face("e", "P0", "e", -1)],
    )
}

/// `T²` under simultaneous inversion. Fixed vertices at `{0,1/2}²`, free
/// edges `a` (bottom), `b` (middle row), `c` (left), `d` (middle column),
/// and the free squares `[0,1/2]²` and `[1/2,1]×[0,1/2]`.
pub fn torus() -> WcwDocument {
    a1_document(
        vec![
            cell("P00", 0, fixed()),
            cell("P10", 0, fixed()),
            cell("P01", 0, fixed()),
            cell("P11", 0, fixed()),
            cell("a", 1, free()),
            cell("b", 1, free()),
            cell("c", 1, free()),
            cell("d", 1, free()),
            cell("Q1", 2, free()),
            cell("Q2", 2, free()),
        ],
        vec![
            face("a", "P10", "e", 1),
            face("a", "P00", "e", -1),
            face("b", "P11", "e", 1),
            face("b", "P01", "e", -1),
            face("c", "P01", "e", 1),
            face("c", "P00", "e", -1),
            face("d", "P11", "e", 1),
            face("d", "P10", "e", -1),
            face("Q1", "a", "e", 1),
            face("Q1", "d", "e", 1),
            face("Q1", "b", "e", -1),
            face("Q1", "c", "e", -1),
            face("Q2", "a", "s1", -1),
            face("Q2", "c", "e", 1),
            face("Q2", "b", "s1", 1),
            face("Q2", "d", "e", -1),
        ],
    )
}

/// Name, document and expected per-degree ranks.
pub fn bundled_library() -> Vec<(&'static str, WcwDocument, Vec<usize>)> {
    vec![("point", point(), vec![1]), ("circle", circle(), vec![1, 1]), ("torus", torus(), vec![1, 2, 1])]
}

pub fn bundled(name: &str) -> Option<WcwDocument> {
    bundled_library().into_iter().find(|(n, _, _)| *n == name).map(|(_, d, _)| d)
}

/// Applies `steps` random moves, each preserving the underlying space up to
/// cellular equivalence: edge subdivision, orientation reversal, and
/// replacing a cell by a translate under its normalizer.
pub fn random_subdivision<R: Rng>(doc: &WcwDocument, rng: &mut R, steps: usize) -> Result<WcwDocument> {
    let group = WeylGroup::from_spec(&doc.datum)?;
    let mut doc = doc.clone();
    let mut fresh = 0usize;
    for _ in 0..steps {
        match rng.gen_range(0..3) {
            0 => {
                let edges: Vec<usize> = (0..doc.cells.len()).filter(|&c| doc.cells[c].dim == 1).collect();
                if let Some(&e) = edges.choose(rng) {
                    fresh += 1;
                    subdivide_edge(&mut doc, e, fresh);
                }
            }
            1 => {
                let c = rng.gen_range(0..doc.cells.len());
                flip_orientation(&mut doc, c);
            }
            _ => {
                let c = rng.gen_range(0..doc.cells.len());
                let iso = ReflectionSubgroup::from_spec(&group, &doc.cells[c].isotropy)?;
                let normalizer: Vec<_> =
                    group.elements().filter(|&t| iso.conjugate_elements(&group, t) == *iso.elements()).collect();
                let t = *normalizer.choose(rng).expect("identity normalizes");
                retranslate(&mut doc, &group, c, t);
            }
        }
    }
    Ok(doc)
}

fn subdivide_edge(doc: &mut WcwDocument, e: usize, tag: usize) {
    let id = doc.cells[e].id.clone();
    let iso = doc.cells[e].isotropy.clone();
    let mid = format!("{id}~m{tag}");
    let half = format!("{id}~{tag}");
    doc.cells.push(cell(&mid, 0, iso.clone()));
    doc.cells.push(cell(&half, 1, iso));
    let mut extra = Vec::new();
    for entry in doc.boundary.iter_mut() {
        if entry.from == id && entry.mult > 0 {
            entry.from = half.clone();
        } else if entry.to == id {
            extra.push(BoundaryEntry { to: half.clone(), ..entry.clone() });
        }
    }
    doc.boundary.extend(extra);
    doc.boundary.push(face(&id, &mid, "e", 1));
    doc.boundary.push(face(&half, &mid, "e", -1));
}

fn flip_orientation(doc: &mut WcwDocument, c: usize) {
    let id = &doc.cells[c].id;
    for entry in doc.boundary.iter_mut() {
        if &entry.from == id || &entry.to == id {
            entry.mult = -entry.mult;
        }
    }
}

fn retranslate(doc: &mut WcwDocument, group: &WeylGroup, c: usize, t: crate::root_system::WeylElement) {
    let id = doc.cells[c].id.clone();
    let tinv = group.inv(t);
    for entry in doc.boundary.iter_mut() {
        // a self-loop cannot occur since dimensions differ
        let w = group.parse_word(&entry.translate).expect("validated word");
        if entry.from == id {
            entry.translate = group.word_string(group.mul(t, w));
        } else if entry.to == id {
            entry.translate = group.word_string(group.mul(w, tinv));
        }
    }
}
