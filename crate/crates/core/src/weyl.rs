//! Reflection subgroups, coset representatives and the cell partition of a
//! family with the coset intersection property.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_system::{RootSign, Weight, WeylElement, WeylGroup};

/// How a reflection subgroup is specified in input documents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubgroupSpec {
    /// Simple-root indices (0-based) generating a parabolic subgroup.
    Parabolic(Vec<usize>),
    /// Roots in fundamental-weight coordinates.
    Roots(Vec<Vec<i64>>),
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupSpec::Parabolic(idx) => {
                let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
            SubgroupSpec::Roots(roots) => {
                let parts: Vec<String> = roots
                    .iter()
                    .map(|r| format!("({})", r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")))
                    .collect();
                write!(f, "<{}>", parts.join(";"))
            }
        }
    }
}

/// A subgroup of W generated by reflections, with its root subsystem.
#[derive(Clone, Debug)]
pub struct ReflectionSubgroup {
    label: String,
    elements: BTreeSet<WeylElement>,
    generators: Vec<Weight>,
    roots: Vec<Weight>,
    positive_roots: Vec<Weight>,
}

impl PartialEq for ReflectionSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for ReflectionSubgroup {}

impl ReflectionSubgroup {
    pub fn from_spec(group: &WeylGroup, spec: &SubgroupSpec) -> Result<Self> {
        let generators = match spec {
            SubgroupSpec::Parabolic(idx) => {
                let simple = &group.datum().simple_roots;
                let mut gens = Vec::new();
                for &i in idx {
                    let root = simple.get(i).ok_or_else(|| {
                        Error::Invalid(format!("simple root index {i} out of range (rank {})", simple.len()))
                    })?;
                    gens.push(root.clone());
                }
                gens
            }
            SubgroupSpec::Roots(roots) => roots.iter().map(|r| Weight(r.clone())).collect(),
        };
        let mut sub = Self::generated_by(group, &generators)?;
        sub.label = spec.to_string();
        Ok(sub)
    }

    /// Closure of `{s_α : α ∈ generators}`.
    pub fn generated_by(group: &WeylGroup, generators: &[Weight]) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if g.rank() != group.datum().lattice_rank {
                return Err(Error::RankMismatch { expected: group.datum().lattice_rank, found: g.rank() });
            }
            gens.push(group.reflection(g)?);
        }
        let elements = closure(group, &gens);
        let mut sub = Self::with_elements(group, elements);
        sub.generators = generators.to_vec();
        Ok(sub)
    }

    /// Builds the subgroup from an element set, checking that it is generated
    /// by the reflections it contains.
    pub fn from_elements(group: &WeylGroup, elements: BTreeSet<WeylElement>) -> Result<Self> {
        let sub = Self::with_elements(group, elements);
        let gens: Vec<WeylElement> = sub.roots_positive_reflections(group);
        if closure(group, &gens) != sub.elements {
            return Err(Error::invariant("element set is not a reflection subgroup"));
        }
        Ok(sub)
    }

    fn roots_positive_reflections(&self, group: &WeylGroup) -> Vec<WeylElement> {
        self.positive_roots.iter().map(|a| group.reflection(a).expect("root")).collect()
    }

    fn with_elements(group: &WeylGroup, elements: BTreeSet<WeylElement>) -> Self {
        let datum = group.datum();
        let mut positive_roots = Vec::new();
        for (root, refl) in group.reflections() {
            if elements.contains(&refl) {
                positive_roots.push(root.clone());
            }
        }
        // keep the datum's ordering of Φ⁺
        positive_roots.sort_by_key(|r| datum.positive_roots.iter().position(|p| p == r));
        let mut roots = positive_roots.clone();
        roots.extend(positive_roots.iter().map(Weight::neg));
        let label = format!("|{}|", elements.len());
        ReflectionSubgroup { label, elements, generators: positive_roots.clone(), roots, positive_roots }
    }

    pub fn trivial(group: &WeylGroup) -> Self {
        let mut s = Self::with_elements(group, [group.identity()].into_iter().collect());
        s.label = "{}".into();
        s
    }

    pub fn whole(group: &WeylGroup) -> Self {
        let mut s = Self::with_elements(group, group.elements().collect());
        s.generators = group.datum().simple_roots.clone();
        s.label = "W".into();
        s
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn elements(&self) -> &BTreeSet<WeylElement> {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, w: WeylElement) -> bool {
        self.elements.contains(&w)
    }

    pub fn is_subgroup_of(&self, other: &ReflectionSubgroup) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn generators(&self) -> &[Weight] {
        &self.generators
    }

    /// Φ_i.
    pub fn roots(&self) -> &[Weight] {
        &self.roots
    }

    /// Φ_i⁺ = Φ_i ∩ Φ⁺.
    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// The conjugate `w W_i w⁻¹` as an element set.
    pub fn conjugate_elements(&self, group: &WeylGroup, w: WeylElement) -> BTreeSet<WeylElement> {
        let winv = group.inv(w);
        self.elements.iter().map(|&x| group.mul(group.mul(w, x), winv)).collect()
    }
}

fn closure(group: &WeylGroup, gens: &[WeylElement]) -> BTreeSet<WeylElement> {
    let mut set: BTreeSet<WeylElement> = [group.identity()].into_iter().collect();
    let mut frontier = vec![group.identity()];
    while let Some(w) = frontier.pop() {
        for &g in gens {
            let x = group.mul(w, g);
            if set.insert(x) {
                frontier.push(x);
            }
        }
    }
    set
}

fn maps_into_positive(group: &WeylGroup, w: WeylElement, roots: &[Weight]) -> bool {
    roots
        .iter()
        .all(|a| group.datum().root_sign(&group.act_unchecked(w, a)) == Some(RootSign::Positive))
}

/// `W_i^ℓ = {w ∈ W : w(Φ_i⁺) ⊂ Φ⁺}` in canonical order.
pub fn min_length_reps(group: &WeylGroup, sub: &ReflectionSubgroup) -> Vec<WeylElement> {
    group.elements().filter(|&w| maps_into_positive(group, w, sub.positive_roots())).collect()
}

/// True when `v ∈ W_i^ℓ`.
pub fn is_min_rep(group: &WeylGroup, sub: &ReflectionSubgroup, v: WeylElement) -> bool {
    maps_into_positive(group, v, sub.positive_roots())
}

pub(crate) fn require_min_rep(group: &WeylGroup, sub: &ReflectionSubgroup, v: WeylElement) -> Result<()> {
    if maps_into_positive(group, v, sub.positive_roots()) {
        Ok(())
    } else {
        Err(Error::NotMinimalRep { element: group.word_string(v), subgroup: sub.label().to_string() })
    }
}

/// `W_j(v)`: the elements of `W_j` fixing `v⁻¹ p_v`.
pub fn stabilizer_subgroup(group: &WeylGroup, wj: &ReflectionSubgroup, v: WeylElement) -> Result<ReflectionSubgroup> {
    require_min_rep(group, wj, v)?;
    let target = group.act_unchecked(group.inv(v), &group.p_weight(v));
    let elements: BTreeSet<WeylElement> = wj
        .elements()
        .iter()
        .copied()
        .filter(|&w| group.act_unchecked(group.inv(w), &target) == target)
        .collect();
    ReflectionSubgroup::from_elements(group, elements)
}

/// `W_j^r(v) = {w ∈ W_j : w⁻¹(Φ_j⁺(v)) ⊂ Φ_j⁺}`.
pub fn right_min_reps(group: &WeylGroup, wj: &ReflectionSubgroup, v: WeylElement) -> Result<Vec<WeylElement>> {
    let stab = stabilizer_subgroup(group, wj, v)?;
    Ok(wj
        .elements()
        .iter()
        .copied()
        .filter(|&w| maps_into_positive(group, group.inv(w), stab.positive_roots()))
        .collect())
}

/// `m_{j,i}(x)`: the representative of `x W_i` in `{w ∈ W_j : w(Φ_i⁺) ⊂ Φ_j⁺}`.
pub fn min_rep_in(
    group: &WeylGroup,
    wj: &ReflectionSubgroup,
    wi: &ReflectionSubgroup,
    x: WeylElement,
) -> Result<WeylElement> {
    if !wi.is_subgroup_of(wj) {
        return Err(Error::NotContained { inner: wi.label().into(), outer: wj.label().into() });
    }
    if !wj.contains(x) {
        return Err(Error::Invalid(format!("{} is not in {}", group.word_string(x), wj.label())));
    }
    let xinv = group.inv(x);
    let mut found = wj
        .elements()
        .iter()
        .copied()
        .filter(|&w| wi.contains(group.mul(xinv, w)) && maps_into_positive(group, w, wi.positive_roots()));
    let first = found.next().ok_or_else(|| Error::invariant("coset without a minimal representative"))?;
    if found.next().is_some() {
        return Err(Error::invariant("coset with two minimal representatives"));
    }
    Ok(first)
}

/// A list of reflection subgroups of one Weyl group with cached `W_i^ℓ`.
#[derive(Clone, Debug)]
pub struct SubgroupFamily {
    members: Vec<ReflectionSubgroup>,
    reps: Vec<Vec<WeylElement>>,
}

impl SubgroupFamily {
    pub fn new(group: &WeylGroup, members: Vec<ReflectionSubgroup>) -> Result<Self> {
        for (i, a) in members.iter().enumerate() {
            for (j, b) in members.iter().enumerate().skip(i + 1) {
                if a == b {
                    return Err(Error::Family(format!("members {i} and {j} are the same subgroup")));
                }
            }
        }
        let reps = members.iter().map(|m| min_length_reps(group, m)).collect();
        Ok(SubgroupFamily { members, reps })
    }

    pub fn from_specs(group: &WeylGroup, specs: &[SubgroupSpec]) -> Result<Self> {
        let members = specs
            .iter()
            .map(|s| ReflectionSubgroup::from_spec(group, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, members)
    }

    /// `{W_I : I ⊆ Δ}`, ordered by decreasing |I| then lexicographically.
    pub fn parabolic(group: &WeylGroup) -> Self {
        let r = group.datum().semisimple_rank();
        let mut subsets: Vec<Vec<usize>> = (0..1u64 << r)
            .map(|mask| (0..r).filter(|i| mask >> i & 1 == 1).collect())
            .collect();
        subsets.sort_by(|a: &Vec<usize>, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let specs: Vec<SubgroupSpec> = subsets.into_iter().map(SubgroupSpec::Parabolic).collect();
        Self::from_specs(group, &specs).expect("parabolic subgroups are distinct")
    }

    /// `W_{0..r} ⊃ W_{0..r-1} ⊃ … ⊃ {1}`.
    pub fn standard_chain(group: &WeylGroup) -> Self {
        let r = group.datum().semisimple_rank();
        let specs: Vec<SubgroupSpec> = (0..=r).rev().map(|k| SubgroupSpec::Parabolic((0..k).collect())).collect();
        Self::from_specs(group, &specs).expect("chain subgroups are distinct")
    }

    pub fn members(&self) -> &[ReflectionSubgroup] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member(&self, i: usize) -> &ReflectionSubgroup {
        &self.members[i]
    }

    /// Cached `W_i^ℓ`.
    pub fn reps(&self, i: usize) -> &[WeylElement] {
        &self.reps[i]
    }

    pub fn position(&self, sub: &ReflectionSubgroup) -> Option<usize> {
        self.members.iter().position(|m| m == sub)
    }
}

/// Outcome of the coset intersection check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CipCheck {
    pub holds: bool,
    /// First pair `(i, j)` without a suitable `k`.
    pub witness: Option<(usize, usize)>,
}

/// For all i, j: some member `W_k ⊇ W_i ∪ W_j` with `W_k^ℓ = W_i^ℓ ∩ W_j^ℓ`.
pub fn check_coset_intersection(family: &SubgroupFamily) -> CipCheck {
    let n = family.len();
    for i in 0..n {
        for j in i..n {
            let wi = family.member(i);
            let wj = family.member(j);
            let ri: BTreeSet<_> = family.reps(i).iter().copied().collect();
            let rj: BTreeSet<_> = family.reps(j).iter().copied().collect();
            let meet: BTreeSet<_> = ri.intersection(&rj).copied().collect();
            let ok = (0..n).any(|k| {
                let wk = family.member(k);
                wi.is_subgroup_of(wk)
                    && wj.is_subgroup_of(wk)
                    && family.reps(k).iter().copied().collect::<BTreeSet<_>>() == meet
            });
            if !ok {
                return CipCheck { holds: false, witness: Some((i, j)) };
            }
        }
    }
    CipCheck { holds: true, witness: None }
}

/// The sets `C_i` and the owner map `v ↦ i(v)`.
#[derive(Clone, Debug)]
pub struct CellPartition {
    pub cells: Vec<Vec<WeylElement>>,
    owner: Vec<Option<usize>>,
}

impl CellPartition {
    /// `i(v)`; `None` when `v` lies in no `W_i^ℓ` (the family lacks `{1}`).
    pub fn owner(&self, v: WeylElement) -> Option<usize> {
        self.owner[v.index()]
    }

    pub fn covers_group(&self) -> bool {
        self.owner.iter().all(Option::is_some)
    }
}

/// `C_i = W_i^ℓ \ ∪_{W_i ⊊ W_j} W_j^ℓ`, verified to be disjoint and to
/// satisfy `W_i^ℓ = ⊔_{W_i ⊆ W_j} C_j`.
pub fn coset_cells(group: &WeylGroup, family: &SubgroupFamily) -> Result<CellPartition> {
    let check = check_coset_intersection(family);
    if let Some((i, j)) = check.witness {
        return Err(Error::CosetIntersection(i, j));
    }
    let n = family.len();
    let mut cells = Vec::with_capacity(n);
    for i in 0..n {
        let wi = family.member(i);
        let cell: Vec<WeylElement> = family
            .reps(i)
            .iter()
            .copied()
            .filter(|v| {
                !(0..n).any(|j| {
                    let wj = family.member(j);
                    j != i && wi.is_subgroup_of(wj) && wj != wi && family.reps(j).contains(v)
                })
            })
            .collect();
        cells.push(cell);
    }
    let mut owner = vec![None; group.order()];
    for (i, cell) in cells.iter().enumerate() {
        for v in cell {
            if let Some(prev) = owner[v.index()] {
                return Err(Error::invariant(format!(
                    "{} lies in cells {prev} and {i}",
                    group.word_string(*v)
                )));
            }
            owner[v.index()] = Some(i);
        }
    }
    for i in 0..n {
        let wi = family.member(i);
        let mut union: Vec<WeylElement> = (0..n)
            .filter(|&j| wi.is_subgroup_of(family.member(j)))
            .flat_map(|j| cells[j].iter().copied())
            .collect();
        union.sort();
        let mut reps = family.reps(i).to_vec();
        reps.sort();
        if union != reps {
            return Err(Error::invariant(format!("W_{i}^l is not the union of the cells above it")));
        }
    }
    let covered: usize = cells.iter().map(Vec::len).sum();
    let reachable: BTreeSet<WeylElement> = (0..n).flat_map(|i| family.reps(i).iter().copied()).collect();
    if covered != reachable.len() {
        return Err(Error::invariant("cells do not cover the union of the coset representatives"));
    }
    Ok(CellPartition { cells, owner })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> WeylGroup {
        WeylGroup::from_spec("A2").unwrap()
    }

    fn w(g: &WeylGroup, word: &str) -> WeylElement {
        g.parse_word(word).unwrap()
    }

    #[test]
    fn parabolic_a1_subgroup() {
        let g = a2();
        let w1 = ReflectionSubgroup::from_spec(&g, &SubgroupSpec::Parabolic(vec![0])).unwrap();
        assert_eq!(w1.elements().iter().copied().collect::<Vec<_>>(), vec![g.identity(), w(&g, "s1")]);
        assert_eq!(w1.positive_roots(), &[g.datum().simple_roots[0].clone()]);
    }

    #[test]
    fn empty_and_full_generators() {
        let g = a2();
        let t = ReflectionSubgroup::from_spec(&g, &SubgroupSpec::Parabolic(vec![])).unwrap();
        assert_eq!(t.order(), 1);
        assert!(t.roots().is_empty());
        let full = ReflectionSubgroup::from_spec(&g, &SubgroupSpec::Parabolic(vec![0, 1])).unwrap();
        assert_eq!(full.order(), 6);
        assert_eq!(full.roots().len(), 6);
    }

    #[test]
    fn non_root_generator_rejected() {
        let g = a2();
        let err = ReflectionSubgroup::from_spec(&g, &SubgroupSpec::Roots(vec![vec![1, 0]])).unwrap_err();
        assert!(matches!(err, Error::NotARoot(_)));
    }

    #[test]
    fn min_reps_of_w1() {
        // (23) = s2, (123) = s1s2
        let g = a2();
        let w1 = ReflectionSubgroup::from_spec(&g, &SubgroupSpec::Parabolic(vec![0])).unwrap();
        assert_eq!(min_length_reps(&g, &w1), vec![g.identity(), w(&g, "s2"), w(&g, "s1s2")]);
        assert_eq!(min_length_reps(&g, &ReflectionSubgroup::whole(&g)), vec![g.identity()]);
        assert_eq!(min_length_reps(&g, &ReflectionSubgroup::trivial(&g)).len(), 6);
    }

    #[test]
    fn stabilizers() {
        let g = a2();
        let w1 = ReflectionSubgroup::from_spec(&g, &SubgroupSpec::Parabolic(vec![0])).unwrap();
        assert_eq!(stabilizer_subgroup(&g, &w1, w(&g, "s2")).unwrap().order(), 1);
        assert_eq!(stabilizer_subgroup(&g, &w1, w(&g, "s1s2")).unwrap().order(), 2);
        assert_eq!(stabilizer_subgroup(&g, &w1, g.identity()).unwrap().order(), 2);
        assert!(matches!(stabilizer_subgroup(&g, &w1, w(&g, "s1")), Err(Error::NotMinimalRep { .. })));
    }

    #[test]
    fn right_reps() {
        let g = a2();
        let w1 = ReflectionSubgroup::from_spec(&g, &SubgroupSpec::Parabolic(vec![0])).unwrap();
        assert_eq!(right_min_reps(&g, &w1, w(&g, "s2")).unwrap(), vec![g.identity(), w(&g, "s1")]);
        assert_eq!(right_min_reps(&g, &w1, w(&g, "s1s2")).unwrap(), vec![g.identity()]);
        let t = ReflectionSubgroup::trivial(&g);
        assert_eq!(right_min_reps(&g, &t, w(&g, "s2s1")).unwrap(), vec![g.identity()]);
    }

    #[test]
    fn minimal_rep_in_coset() {
        let g = a2();
        let whole = ReflectionSubgroup::whole(&g);
        let w1 = ReflectionSubgroup::from_spec(&g, &SubgroupSpec::Parabolic(vec![0])).unwrap();
        assert_eq!(min_rep_in(&g, &whole, &w1, w(&g, "s1")).unwrap(), g.identity());
        // (13) = s1s2s1 ↦ (123) = s1s2
        assert_eq!(min_rep_in(&g, &whole, &w1, w(&g, "s1s2s1")).unwrap(), w(&g, "s1s2"));
        let t = ReflectionSubgroup::trivial(&g);
        for x in g.elements() {
            assert_eq!(min_rep_in(&g, &whole, &t, x).unwrap(), x);
        }
        assert!(matches!(min_rep_in(&g, &w1, &whole, g.identity()), Err(Error::NotContained { .. })));
    }

    #[test]
    fn cip_examples() {
        let g = a2();
        assert!(check_coset_intersection(&SubgroupFamily::parabolic(&g)).holds);
        assert!(check_coset_intersection(&SubgroupFamily::standard_chain(&g)).holds);
        let bad = SubgroupFamily::from_specs(
            &g,
            &[SubgroupSpec::Parabolic(vec![0]), SubgroupSpec::Parabolic(vec![1])],
        )
        .unwrap();
        let check = check_coset_intersection(&bad);
        assert!(!check.holds);
        assert_eq!(check.witness, Some((0, 1)));
        assert!(matches!(coset_cells(&g, &bad), Err(Error::CosetIntersection(0, 1))));
    }

    #[test]
    fn chain_cells() {
        let g = a2();
        let fam = SubgroupFamily::standard_chain(&g);
        let cells = coset_cells(&g, &fam).unwrap();
        assert_eq!(cells.cells[0], vec![g.identity()]);
        assert_eq!(cells.cells[1], vec![w(&g, "s2"), w(&g, "s1s2")]);
        assert_eq!(cells.cells[2], vec![w(&g, "s1"), w(&g, "s2s1"), w(&g, "s1s2s1")]);
        assert!(cells.covers_group());
    }

    #[test]
    fn whole_group_only_family() {
        let g = a2();
        let fam = SubgroupFamily::new(&g, vec![ReflectionSubgroup::whole(&g)]).unwrap();
        let cells = coset_cells(&g, &fam).unwrap();
        assert_eq!(cells.cells, vec![vec![g.identity()]]);
        assert!(!cells.covers_group());
        let t1 = WeylGroup::from_spec("T1").unwrap();
        let fam = SubgroupFamily::new(&t1, vec![ReflectionSubgroup::whole(&t1)]).unwrap();
        assert!(coset_cells(&t1, &fam).unwrap().covers_group());
    }

    #[test]
    fn parabolic_cells_partition_a2() {
        let g = a2();
        let fam = SubgroupFamily::parabolic(&g);
        let cells = coset_cells(&g, &fam).unwrap();
        assert_eq!(cells.cells.iter().map(Vec::len).sum::<usize>(), 6);
        assert!(cells.covers_group());
    }

    #[test]
    fn duplicate_members_rejected() {
        let g = a2();
        let err = SubgroupFamily::from_specs(
            &g,
            &[SubgroupSpec::Parabolic(vec![0]), SubgroupSpec::Roots(vec![g.datum().simple_roots[0].0.clone()])],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Family(_)));
    }
}
