use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::document::{WcwDocument, SCHEMA};
use crate::error::{Error, Result};
use crate::linalg::{chain_homology, IntegerGroup, IntegerMatrix};
use crate::rep_ring::SteinbergFamily;
use crate::root_system::{WeylElement, WeylGroup};
use crate::weyl::{ReflectionSubgroup, SubgroupFamily};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub dim: usize,
    /// Index of `W_σ` in the family.
    pub isotropy: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryTerm {
    pub to: usize,
    pub translate: WeylElement,
    pub mult: i64,
}

/// A validated W-CW complex together with the Steinberg data of its family.
#[derive(Clone, Debug)]
pub struct WCWComplex {
    group: WeylGroup,
    steinberg: SteinbergFamily,
    cells: Vec<Cell>,
    boundary: Vec<Vec<BoundaryTerm>>,
    /// `coset_rep[i][x]`: the element of `W_i^ℓ` in `x W_i`.
    coset_rep: Vec<Vec<WeylElement>>,
}

pub fn load_wcw_complex(doc: &WcwDocument) -> Result<WCWComplex> {
    if doc.schema != SCHEMA {
        return Err(Error::Complex(format!("unsupported schema `{}`", doc.schema)));
    }
    let group = WeylGroup::from_spec(&doc.datum)?;
    let family = SubgroupFamily::from_specs(&group, &doc.family)?;
    let steinberg = SteinbergFamily::new(&group, family)?;
    let family = steinberg.family();

    let mut ids = BTreeMap::new();
    let mut cells = Vec::with_capacity(doc.cells.len());
    for entry in &doc.cells {
        if ids.insert(entry.id.clone(), cells.len()).is_some() {
            return Err(Error::Complex(format!("duplicate cell id `{}`", entry.id)));
        }
        let sub = ReflectionSubgroup::from_spec(&group, &entry.isotropy)?;
        let isotropy = family.position(&sub).ok_or_else(|| {
            Error::Complex(format!("isotropy {} of cell `{}` is not a family member", entry.isotropy, entry.id))
        })?;
        cells.push(Cell { id: entry.id.clone(), dim: entry.dim, isotropy });
    }

    let mut boundary = vec![Vec::new(); cells.len()];
    for entry in &doc.boundary {
        let lookup = |id: &str| {
            ids.get(id).copied().ok_or_else(|| Error::Complex(format!("unknown cell `{id}` in boundary")))
        };
        let from = lookup(&entry.from)?;
        let to = lookup(&entry.to)?;
        if cells[to].dim + 1 != cells[from].dim {
            return Err(Error::Complex(format!(
                "boundary `{}` -> `{}` does not drop dimension by one",
                entry.from, entry.to
            )));
        }
        let translate = group.parse_word(&entry.translate)?;
        if entry.mult == 0 {
            continue;
        }
        let w_sigma = family.member(cells[from].isotropy);
        let conj = family.member(cells[to].isotropy).conjugate_elements(&group, translate);
        if !w_sigma.elements().is_subset(&conj) {
            return Err(Error::Complex(format!(
                "isotropy of `{}` is not contained in the conjugated isotropy of `{}`",
                entry.from, entry.to
            )));
        }
        boundary[from].push(BoundaryTerm { to, translate, mult: entry.mult });
    }

    let coset_rep = (0..family.len())
        .map(|i| {
            let mut table = vec![WeylElement::IDENTITY; group.order()];
            for &r in family.reps(i) {
                for &h in family.member(i).elements() {
                    table[group.mul(r, h).index()] = r;
                }
            }
            table
        })
        .collect();

    let complex = WCWComplex { group, steinberg, cells, boundary, coset_rep };
    complex.check_boundary_squared()?;
    Ok(complex)
}

/// Integer chain complex of the underlying space.
#[derive(Clone, Debug)]
pub struct ExpandedComplex {
    /// Per degree, the expanded cells `(cell, u)` with `u ∈ W_σ^ℓ`.
    pub basis: Vec<Vec<(usize, WeylElement)>>,
    /// `boundaries[n]: C_n → C_{n-1}`; entry 0 is a `0 × dim C_0` matrix.
    pub boundaries: Vec<IntegerMatrix>,
}

impl ExpandedComplex {
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn homology(&self) -> Vec<IntegerGroup> {
        chain_homology(&self.dims(), &self.boundaries)
    }

    pub fn betti(&self) -> Vec<usize> {
        self.homology().iter().map(|g| g.free_rank).collect()
    }

    pub fn boundary_squared_is_zero(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }
}

impl WCWComplex {
    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn steinberg(&self) -> &SteinbergFamily {
        &self.steinberg
    }

    pub fn family(&self) -> &SubgroupFamily {
        self.steinberg.family()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn boundary(&self, cell: usize) -> &[BoundaryTerm] {
        &self.boundary[cell]
    }

    pub fn top_dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    pub fn cells_of_dim(&self, n: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&c| self.cells[c].dim == n).collect()
    }

    pub fn identity_translates_only(&self) -> bool {
        self.boundary.iter().flatten().all(|t| t.translate == WeylElement::IDENTITY)
    }

    /// Orbit sizes summed per degree, alternating.
    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .map(|c| {
                let size = self.family().reps(c.isotropy).len() as i64;
                if c.dim % 2 == 0 {
                    size
                } else {
                    -size
                }
            })
            .sum()
    }

    pub fn expand_ordinary_complex(&self) -> ExpandedComplex {
        let top = self.top_dim().map_or(0, |d| d + 1);
        let mut basis: Vec<Vec<(usize, WeylElement)>> = vec![Vec::new(); top];
        for (c, cell) in self.cells.iter().enumerate() {
            for &u in self.family().reps(cell.isotropy) {
                basis[cell.dim].push((c, u));
            }
        }
        let position: Vec<BTreeMap<(usize, WeylElement), usize>> = basis
            .iter()
            .map(|b| b.iter().enumerate().map(|(k, &key)| (key, k)).collect())
            .collect();
        let mut boundaries = Vec::with_capacity(top);
        boundaries.push(IntegerMatrix::zeros(0, basis.first().map_or(0, Vec::len)));
        for n in 1..top {
            let mut m = IntegerMatrix::zeros(basis[n - 1].len(), basis[n].len());
            for (col, &(c, u)) in basis[n].iter().enumerate() {
                for term in &self.boundary[c] {
                    let target = self.group.mul(u, term.translate);
                    let rep = self.coset_rep[self.cells[term.to].isotropy][target.index()];
                    let row = position[n - 1][&(term.to, rep)];
                    m.entries[row][col] += BigInt::from(term.mult);
                }
            }
            boundaries.push(m);
        }
        ExpandedComplex { basis, boundaries }
    }

    fn check_boundary_squared(&self) -> Result<()> {
        let expanded = self.expand_ordinary_complex();
        for n in 2..expanded.boundaries.len() {
            let prod = expanded.boundaries[n - 1].mul(&expanded.boundaries[n]);
            if let Some((row, col)) = first_nonzero(&prod) {
                let (sigma, _) = expanded.basis[n][col];
                let (rho, _) = expanded.basis[n - 2][row];
                return Err(Error::Complex(format!(
                    "boundary of boundary of `{}` hits `{}`",
                    self.cells[sigma].id, self.cells[rho].id
                )));
            }
        }
        Ok(())
    }
}

fn first_nonzero(m: &IntegerMatrix) -> Option<(usize, usize)> {
    use num_traits::Zero;
    (0..m.rows).flat_map(|i| (0..m.cols).map(move |j| (i, j))).find(|&(i, j)| !m.entries[i][j].is_zero())
}
