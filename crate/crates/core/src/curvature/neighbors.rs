use crate::complex::{CellComplex, CellId};

/// A 2-neighbor of a base vector together with the cells that link it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoNeighbor {
    /// Index of the neighbor vector: `(μ>τ')` upward, `(σ'>ρ)` downward.
    pub vector: usize,
    /// The common coface `μ` (upward) or common face `ρ` (downward).
    pub witness: CellId,
    /// Index of the vector closing the diamond with the base: `(τ'>σ)`
    /// upward, `(τ>σ')` downward.
    pub partner: usize,
}

/// The 0- and 2-neighbors of one incidence vector `(τ>σ)`.
///
/// All lists hold vector indices in the order of
/// [`CellComplex::vectors`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NeighborSets {
    pub base: usize,
    /// `(τ'>σ)` with `τ' ≠ τ` and no coface shared by `τ` and `τ'`.
    pub zero_up: Vec<usize>,
    /// `(τ>σ')` with `σ' ≠ σ` and no face shared by `σ` and `σ'`.
    pub zero_down: Vec<usize>,
    /// `(μ>τ')` with `μ > τ > σ`, `μ > τ' > σ`, `τ' ≠ τ`.
    pub two_up: Vec<TwoNeighbor>,
    /// `(σ'>ρ)` with `τ > σ > ρ`, `τ > σ' > ρ`, `σ' ≠ σ`.
    pub two_down: Vec<TwoNeighbor>,
}

impl NeighborSets {
    pub fn zero_count(&self) -> usize {
        self.zero_up.len() + self.zero_down.len()
    }

    pub fn two_count(&self) -> usize {
        self.two_up.len() + self.two_down.len()
    }
}

fn shares_coface(complex: &CellComplex, a: CellId, b: CellId) -> bool {
    complex
        .cofaces(a)
        .iter()
        .any(|x| complex.cofaces(b).iter().any(|y| y.cell == x.cell))
}

fn shares_face(complex: &CellComplex, a: CellId, b: CellId) -> bool {
    a.dim > 0
        && complex
            .faces(a)
            .iter()
            .any(|x| complex.faces(b).iter().any(|y| y.cell == x.cell))
}

/// Enumerates the neighbors of vector `base` straight from the definitions.
///
/// In a quasiconvex complex every 2-neighbor has a unique witness, so each
/// neighbor vector appears once.
pub fn enumerate(complex: &CellComplex, base: usize) -> NeighborSets {
    let v = complex.vectors()[base];
    let (tau, sigma) = (v.tau, v.sigma);
    let index = |t: CellId, s: CellId| {
        complex
            .vector_index(t, s)
            .expect("incidence pairs are vectors")
    };
    let mut out = NeighborSets {
        base,
        ..Default::default()
    };

    for inc in complex.cofaces(sigma) {
        let other = CellId::new(tau.dim, inc.cell);
        if other != tau && !shares_coface(complex, tau, other) {
            out.zero_up.push(index(other, sigma));
        }
    }
    for inc in complex.faces(tau) {
        let other = CellId::new(sigma.dim, inc.cell);
        if other != sigma && !shares_face(complex, sigma, other) {
            out.zero_down.push(index(tau, other));
        }
    }
    for up in complex.cofaces(tau) {
        let mu = CellId::new(tau.dim + 1, up.cell);
        for side in complex.faces(mu) {
            let other = CellId::new(tau.dim, side.cell);
            if other != tau && complex.incidence(other, sigma).is_some() {
                out.two_up.push(TwoNeighbor {
                    vector: index(mu, other),
                    witness: mu,
                    partner: index(other, sigma),
                });
            }
        }
    }
    if sigma.dim > 0 {
        for down in complex.faces(sigma) {
            let rho = CellId::new(sigma.dim - 1, down.cell);
            for side in complex.cofaces(rho) {
                let other = CellId::new(sigma.dim, side.cell);
                if other != sigma && complex.incidence(tau, other).is_some() {
                    out.two_down.push(TwoNeighbor {
                        vector: index(other, rho),
                        witness: rho,
                        partner: index(tau, other),
                    });
                }
            }
        }
    }
    out.zero_up.sort_unstable();
    out.zero_down.sort_unstable();
    out.two_up.sort_unstable_by_key(|n| (n.vector, n.witness));
    out.two_down.sort_unstable_by_key(|n| (n.vector, n.witness));
    out
}
