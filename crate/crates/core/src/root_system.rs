//! Classical root data, the Weyl group and its action on the weight lattice.
//!
//! Weights are stored in fundamental-weight coordinates followed by the
//! torus coordinates. Simple roots follow Bourbaki ordering within each
//! factor; the simple reflection `s_i` sends `ω_j` to `ω_j - δ_ij α_i`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A point of the weight lattice (exponent sequence of a Laurent monomial).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn unit(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        };
        f.write_str(c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub family: Family,
    pub rank: usize,
}

impl Factor {
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = (1..=n).product::<u128>();
        match self.family {
            Family::A => fact * (n + 1),
            Family::B | Family::C => fact << n,
            Family::D => fact << (n - 1),
        }
    }

    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
        }
    }

    /// Simple roots in an orthonormal ambient basis, Bourbaki ordering.
    fn ambient_simple_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let dim = if self.family == Family::A { n + 1 } else { n };
        let mut roots = Vec::with_capacity(n);
        for i in 0..n {
            let mut v = vec![0i64; dim];
            let last = i + 1 == n;
            match (self.family, last) {
                (Family::B, true) => v[i] = 1,
                (Family::C, true) => v[i] = 2,
                (Family::D, true) => {
                    v[n - 2] = 1;
                    v[n - 1] = 1;
                }
                _ => {
                    v[i] = 1;
                    v[i + 1] = -1;
                }
            }
            roots.push(v);
        }
        roots
    }

    /// `C[i][j] = <α_i^∨, α_j>`.
    fn cartan(&self) -> Vec<Vec<i64>> {
        let roots = self.ambient_simple_roots();
        let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
        roots
            .iter()
            .map(|ai| roots.iter().map(|aj| 2 * dot(ai, aj) / dot(ai, ai)).collect())
            .collect()
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// Parsed root datum descriptor such as `A2`, `C3` or `A1xA1xT1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeSpec {
    pub factors: Vec<Factor>,
    pub torus_rank: usize,
    /// Notes about factors rewritten during parsing (e.g. `D3` read as `A3`).
    pub normalized: Vec<String>,
}

impl TypeSpec {
    pub fn semisimple_rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    pub fn weyl_order(&self) -> u128 {
        self.factors.iter().map(Factor::weyl_order).product()
    }
}

impl FromStr for TypeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        let mut torus_rank = 0;
        let mut normalized = Vec::new();
        let mut position = 0;
        if s.trim().is_empty() {
            return Err(Error::Parse { position: 0, message: "empty root datum".into() });
        }
        for token in s.split('x') {
            let start = position;
            position += token.len() + 1;
            let token = token.trim();
            let mut chars = token.chars();
            let letter = chars.next().ok_or_else(|| Error::Parse {
                position: start,
                message: "empty factor".into(),
            })?;
            let digits = chars.as_str();
            let rank: usize = digits.parse().map_err(|_| Error::Parse {
                position: start + 1,
                message: format!("expected a rank after `{letter}`, found `{digits}`"),
            })?;
            let bad = |reason: &str| Error::InvalidFactor {
                factor: token.to_string(),
                reason: reason.to_string(),
            };
            let family = match letter.to_ascii_uppercase() {
                'A' => Family::A,
                'B' => Family::B,
                'C' => Family::C,
                'D' => Family::D,
                'T' => {
                    torus_rank += rank;
                    continue;
                }
                _ => return Err(bad("family letter must be one of A, B, C, D, T")),
            };
            match family {
                Family::A if rank < 1 => return Err(bad("type A needs rank >= 1")),
                Family::B | Family::C if rank < 2 => return Err(bad("types B and C need rank >= 2")),
                Family::D if rank < 3 => return Err(bad("type D needs rank >= 3")),
                _ => {}
            }
            if family == Family::D && rank == 3 {
                normalized.push("D3 read as A3".to_string());
                factors.push(Factor { family: Family::A, rank: 3 });
            } else {
                factors.push(Factor { family, rank });
            }
        }
        Ok(TypeSpec { factors, torus_rank, normalized })
    }
}

impl fmt::Display for TypeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        if self.torus_rank > 0 {
            parts.push(format!("T{}", self.torus_rank));
        }
        if parts.is_empty() {
            parts.push("T0".into());
        }
        write!(f, "{}", parts.join("x"))
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IntMatrix { rows: n, cols: n, data }
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut data = vec![0; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        IntMatrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootSign {
    Positive,
    Negative,
}

/// Classical root datum: Cartan data, Δ, Φ⁺ and the fundamental weights.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub type_spec: TypeSpec,
    /// Block diagonal, `cartan[i][j] = <α_i^∨, α_j>`.
    pub cartan: Vec<Vec<i64>>,
    pub lattice_rank: usize,
    pub simple_roots: Vec<Weight>,
    pub positive_roots: Vec<Weight>,
    /// Simple-root coordinates of each positive root, aligned with `positive_roots`.
    pub positive_root_coords: Vec<Vec<i64>>,
    pub fundamental_weights: Vec<Weight>,
    signs: HashMap<Weight, RootSign>,
}

impl RootDatum {
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    /// Sign of a root, or `None` when the weight is not a root.
    pub fn root_sign(&self, w: &Weight) -> Option<RootSign> {
        self.signs.get(w).copied()
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.signs.contains_key(w)
    }

    pub fn is_positive_root(&self, w: &Weight) -> bool {
        self.root_sign(w) == Some(RootSign::Positive)
    }

    /// All roots, positive ones first.
    pub fn roots(&self) -> Vec<Weight> {
        let mut all = self.positive_roots.clone();
        all.extend(self.positive_roots.iter().map(Weight::neg));
        all
    }

    pub fn simple_reflection_matrix(&self, i: usize) -> IntMatrix {
        let n = self.lattice_rank;
        let mut m = IntMatrix::identity(n);
        // column i is s_i(ω_i) = ω_i - α_i
        for r in 0..n {
            m.data[r * n + i] -= self.simple_roots[i].0[r];
        }
        m
    }
}

/// Parses and builds a root datum from a descriptor string.
pub fn build_root_datum(spec: &str) -> Result<RootDatum> {
    let type_spec: TypeSpec = spec.parse()?;
    Ok(RootDatum::from_spec(type_spec))
}

impl RootDatum {
    pub fn from_spec(type_spec: TypeSpec) -> Self {
        let ss = type_spec.semisimple_rank();
        let lattice_rank = ss + type_spec.torus_rank;
        let mut cartan = vec![vec![0i64; ss]; ss];
        let mut offset = 0;
        for factor in &type_spec.factors {
            let block = factor.cartan();
            for (i, row) in block.iter().enumerate() {
                for (j, &c) in row.iter().enumerate() {
                    cartan[offset + i][offset + j] = c;
                }
            }
            offset += factor.rank;
        }

        // α_j = Σ_i <α_j, α_i^∨> ω_i = Σ_i cartan[i][j] ω_i
        let simple_roots: Vec<Weight> = (0..ss)
            .map(|j| {
                let mut v = vec![0i64; lattice_rank];
                for (i, row) in cartan.iter().enumerate() {
                    v[i] = row[j];
                }
                Weight(v)
            })
            .collect();

        // closure of Δ under simple reflections that keep the root positive
        let to_weight = |c: &[i64]| {
            let mut v = vec![0i64; lattice_rank];
            for (j, &cj) in c.iter().enumerate() {
                for (r, x) in v.iter_mut().enumerate().take(ss) {
                    *x += cj * cartan[r][j];
                }
            }
            Weight(v)
        };
        let mut coords: Vec<Vec<i64>> = (0..ss)
            .map(|i| {
                let mut c = vec![0; ss];
                c[i] = 1;
                c
            })
            .collect();
        let mut seen: std::collections::HashSet<Vec<i64>> = coords.iter().cloned().collect();
        let mut cursor = 0;
        while cursor < coords.len() {
            let c = coords[cursor].clone();
            cursor += 1;
            let w = to_weight(&c);
            for i in 0..ss {
                let pairing = w.0[i];
                if pairing == 0 {
                    continue;
                }
                let mut next = c.clone();
                next[i] -= pairing;
                if next.iter().all(|&x| x >= 0) && next.iter().any(|&x| x > 0) && seen.insert(next.clone()) {
                    coords.push(next);
                }
            }
        }
        coords.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let positive_roots: Vec<Weight> = coords.iter().map(|c| to_weight(c)).collect();

        let mut signs = HashMap::new();
        for r in &positive_roots {
            signs.insert(r.clone(), RootSign::Positive);
            signs.insert(r.neg(), RootSign::Negative);
        }
        let fundamental_weights = (0..ss).map(|i| Weight::unit(lattice_rank, i)).collect();

        RootDatum {
            type_spec,
            cartan,
            lattice_rank,
            simple_roots,
            positive_roots,
            positive_root_coords: coords,
            fundamental_weights,
            signs,
        }
    }
}

/// An element of the Weyl group, identified by its position in the
/// canonical order (length, then lexicographic reduced word).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElement(pub u32);

impl WeylElement {
    pub const IDENTITY: WeylElement = WeylElement(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The Weyl group of a root datum with multiplication and inverse tables.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    datum: RootDatum,
    matrices: Vec<IntMatrix>,
    words: Vec<Vec<usize>>,
    lengths: Vec<usize>,
    mult: Vec<u32>,
    inverse: Vec<u32>,
    lookup: HashMap<IntMatrix, u32>,
    simple: Vec<WeylElement>,
    reflections: BTreeMap<Weight, WeylElement>,
}

impl WeylGroup {
    /// Enumerates W by breadth-first closure over right multiplication by
    /// simple reflections.
    pub fn new(datum: RootDatum) -> Self {
        let n = datum.lattice_rank;
        let ss = datum.semisimple_rank();
        let gens: Vec<IntMatrix> = (0..ss).map(|i| datum.simple_reflection_matrix(i)).collect();

        let mut matrices = vec![IntMatrix::identity(n)];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut lookup: HashMap<IntMatrix, u32> = HashMap::new();
        lookup.insert(matrices[0].clone(), 0);
        let mut level = vec![0usize];
        while !level.is_empty() {
            let mut next = Vec::new();
            for &w in &level {
                for (i, g) in gens.iter().enumerate() {
                    let m = matrices[w].mul(g);
                    if lookup.contains_key(&m) {
                        continue;
                    }
                    let idx = matrices.len();
                    lookup.insert(m.clone(), idx as u32);
                    let mut word = words[w].clone();
                    word.push(i);
                    matrices.push(m);
                    words.push(word);
                    next.push(idx);
                }
            }
            level = next;
        }

        let order = matrices.len();
        let mut mult = vec![0u32; order * order];
        for a in 0..order {
            for b in 0..order {
                let m = matrices[a].mul(&matrices[b]);
                mult[a * order + b] = lookup[&m];
            }
        }
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| mult[a * order + b] == 0).expect("group inverse") as u32)
            .collect();

        let mut group = WeylGroup {
            datum,
            matrices,
            words,
            lengths: vec![],
            mult,
            inverse,
            lookup,
            simple: vec![],
            reflections: BTreeMap::new(),
        };
        group.simple = (0..ss)
            .map(|i| WeylElement(group.lookup[&group.datum.simple_reflection_matrix(i)]))
            .collect();
        group.lengths = (0..order).map(|w| group.inversion_count(WeylElement(w as u32))).collect();

        // s_{w α_i} = w s_i w^{-1}
        let mut reflections = BTreeMap::new();
        for w in group.elements() {
            for i in 0..ss {
                let root = group.act_unchecked(w, &group.datum.simple_roots[i]);
                if group.datum.is_positive_root(&root) && !reflections.contains_key(&root) {
                    let refl = group.mul(group.mul(w, group.simple[i]), group.inv(w));
                    reflections.insert(root, refl);
                }
            }
        }
        group.reflections = reflections;
        group
    }

    pub fn from_spec(spec: &str) -> Result<Self> {
        Ok(WeylGroup::new(build_root_datum(spec)?))
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn order(&self) -> usize {
        self.matrices.len()
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::IDENTITY
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = WeylElement> + '_ {
        (0..self.order() as u32).map(WeylElement)
    }

    pub fn simple_reflections(&self) -> &[WeylElement] {
        &self.simple
    }

    pub fn matrix(&self, w: WeylElement) -> &IntMatrix {
        &self.matrices[w.index()]
    }

    pub fn word(&self, w: WeylElement) -> &[usize] {
        &self.words[w.index()]
    }

    /// Reduced word as `e` or `s1s2...` with 1-based indices.
    pub fn word_string(&self, w: WeylElement) -> String {
        let word = self.word(w);
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|i| format!("s{}", i + 1)).collect()
        }
    }

    /// Parses a (not necessarily reduced) word such as `s1s2`, `e` or the
    /// empty string.
    pub fn parse_word(&self, text: &str) -> Result<WeylElement> {
        let t = text.trim();
        if t.is_empty() || t == "e" || t == "1" {
            return Ok(self.identity());
        }
        let mut w = self.identity();
        for (pos, part) in t.split('s').enumerate() {
            if pos == 0 {
                if !part.is_empty() {
                    return Err(Error::Parse { position: 0, message: format!("bad word `{t}`") });
                }
                continue;
            }
            let i: usize = part.parse().map_err(|_| Error::Parse {
                position: pos,
                message: format!("bad reflection index in word `{t}`"),
            })?;
            if i == 0 || i > self.simple.len() {
                return Err(Error::Parse {
                    position: pos,
                    message: format!("reflection index {i} out of range in `{t}`"),
                });
            }
            w = self.mul(w, self.simple[i - 1]);
        }
        Ok(w)
    }

    pub fn mul(&self, a: WeylElement, b: WeylElement) -> WeylElement {
        WeylElement(self.mult[a.index() * self.order() + b.index()])
    }

    pub fn inv(&self, a: WeylElement) -> WeylElement {
        WeylElement(self.inverse[a.index()])
    }

    pub fn element_of_matrix(&self, m: &IntMatrix) -> Option<WeylElement> {
        self.lookup.get(m).map(|&i| WeylElement(i))
    }

    /// `w·λ`, rejecting weights of the wrong rank.
    pub fn act(&self, w: WeylElement, lambda: &Weight) -> Result<Weight> {
        if lambda.rank() != self.datum.lattice_rank {
            return Err(Error::RankMismatch { expected: self.datum.lattice_rank, found: lambda.rank() });
        }
        Ok(self.act_unchecked(w, lambda))
    }

    pub(crate) fn act_unchecked(&self, w: WeylElement, lambda: &Weight) -> Weight {
        Weight(self.matrix(w).apply(&lambda.0))
    }

    /// `ℓ(w) = |{α ∈ Φ⁺ : w(α) < 0}|`.
    pub fn length(&self, w: WeylElement) -> usize {
        self.lengths[w.index()]
    }

    fn inversion_count(&self, w: WeylElement) -> usize {
        self.datum
            .positive_roots
            .iter()
            .filter(|a| self.datum.root_sign(&self.act_unchecked(w, a)) == Some(RootSign::Negative))
            .count()
    }

    /// The reflection `s_α`; `α` may be positive or negative.
    pub fn reflection(&self, alpha: &Weight) -> Result<WeylElement> {
        let key = match self.datum.root_sign(alpha) {
            Some(RootSign::Positive) => alpha.clone(),
            Some(RootSign::Negative) => alpha.neg(),
            None => return Err(Error::NotARoot(alpha.to_string())),
        };
        Ok(self.reflections[&key])
    }

    /// Positive roots paired with their reflections.
    pub fn reflections(&self) -> impl Iterator<Item = (&Weight, WeylElement)> {
        self.reflections.iter().map(|(r, &w)| (r, w))
    }

    pub fn longest(&self) -> WeylElement {
        WeylElement(self.order() as u32 - 1)
    }

    /// `p_v = Σ {ω_i : v⁻¹ α_i < 0}`.
    pub fn p_weight(&self, v: WeylElement) -> Weight {
        let vinv = self.inv(v);
        let mut p = Weight::zero(self.datum.lattice_rank);
        for (i, alpha) in self.datum.simple_roots.iter().enumerate() {
            let image = self.act_unchecked(vinv, alpha);
            if self.datum.root_sign(&image) == Some(RootSign::Negative) {
                p.0[i] += 1;
            }
        }
        p
    }
}

/// Convenience wrapper returning all elements of W.
pub fn weyl_elements(group: &WeylGroup) -> Vec<WeylElement> {
    group.elements().collect()
}
