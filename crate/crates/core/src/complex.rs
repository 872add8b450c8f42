//! Finite weighted regular cell complexes.
//!
//! A [`CellComplex`] stores, for every cell of dimension `p >= 1`, the list of
//! its `(p-1)`-dimensional faces together with the incidence numbers `±1`.
//! Regularity of the attaching maps cannot be read off the combinatorics, so
//! construction enforces the usual proxy instead: incidence numbers are `±1`,
//! no face is repeated, every cell of positive dimension has at least two
//! faces, and `∂∘∂ = 0` over the integers. Weights are strictly positive reals
//! and default to `1.0`.
//!
//! Vertices have no faces (the complex is not augmented).

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use thiserror::Error;

/// A cell, addressed by its dimension and its index within that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId {
    pub dim: usize,
    pub index: usize,
}

impl CellId {
    pub const fn new(dim: usize, index: usize) -> Self {
        Self { dim, index }
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}:{}", self.dim, self.index)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("malformed cell id `{0}` (expected `d<dim>:<index>`)")]
pub struct ParseCellIdError(String);

impl FromStr for CellId {
    type Err = ParseCellIdError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseCellIdError(s.to_owned());
        let rest = s.strip_prefix('d').ok_or_else(err)?;
        let (dim, index) = rest.split_once(':').ok_or_else(err)?;
        Ok(CellId::new(
            dim.parse().map_err(|_| err())?,
            index.parse().map_err(|_| err())?,
        ))
    }
}

/// One entry of a boundary or coboundary list: the neighbouring cell's index
/// (in the adjacent dimension) and the incidence number.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub cell: usize,
    pub sign: i8,
}

/// An ordered pair `(τ > σ)` with `dim τ = dim σ + 1` and `σ` a face of `τ`.
///
/// 1-forms and combinatorial vector fields carry one coefficient per
/// incidence vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IncidenceVector {
    pub tau: CellId,
    pub sigma: CellId,
    /// The incidence number `[τ : σ]`.
    pub sign: i8,
}

impl fmt::Display for IncidenceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}>{}", self.tau, self.sigma)
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ComplexError {
    #[error("complex has no vertices")]
    Empty,
    #[error("cell {cell} lists face {face}, which does not exist")]
    DanglingFace { cell: CellId, face: CellId },
    #[error(
        "cell {cell} has incidence number {sign} with face {face}; only +1 and -1 are allowed"
    )]
    BadSign {
        cell: CellId,
        face: CellId,
        sign: i64,
    },
    #[error("cell {cell} lists face {face} more than once")]
    RepeatedFace { cell: CellId, face: CellId },
    #[error("cell {cell} has {count} boundary faces, at least 2 are required")]
    TooFewFaces { cell: CellId, count: usize },
    #[error("boundary_matrix({p}) * boundary_matrix({}) is nonzero at row {row}, column {col} (value {value})", p + 1)]
    BoundaryNotSquareZero {
        p: usize,
        row: usize,
        col: usize,
        value: i64,
    },
    #[error("cell {cell} has weight {weight}; weights must be finite and strictly positive")]
    NonPositiveWeight { cell: CellId, weight: f64 },
    #[error("{given} weights supplied for dimension {dim}, which has {expected} cells")]
    WeightShape {
        dim: usize,
        given: usize,
        expected: usize,
    },
    #[error("dimension {dim} is out of range 1..={top}")]
    DimensionOutOfRange { dim: usize, top: usize },
    #[error("unknown cell {0}")]
    UnknownCell(CellId),
    #[error("degree is defined for vertices and 2-cells only, got {0}")]
    UnsupportedDimension(CellId),
}

/// Witness returned when a complex is not quasiconvex: two distinct
/// `(p+1)`-cells sharing the `p`-cell `shared` whose closures meet in more
/// than the closure of `shared`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiconvexViolation {
    pub first: CellId,
    pub second: CellId,
    pub shared: CellId,
    pub intersection: BTreeSet<CellId>,
}

/// Incrementally assembles the input of [`CellComplex::from_boundaries`].
#[derive(Clone, Debug, Default)]
pub struct ComplexBuilder {
    vertices: usize,
    cells: Vec<Vec<Vec<(usize, i64)>>>,
    weights: Option<Vec<Vec<f64>>>,
}

impl ComplexBuilder {
    pub fn new(vertices: usize) -> Self {
        Self {
            vertices,
            ..Self::default()
        }
    }

    pub fn add_vertex(&mut self) -> CellId {
        self.vertices += 1;
        CellId::new(0, self.vertices - 1)
    }

    /// Adds a cell of dimension `dim >= 1` with the given `(face index, sign)`
    /// boundary list. Nothing is validated until [`ComplexBuilder::build`].
    pub fn add_cell(
        &mut self,
        dim: usize,
        faces: impl IntoIterator<Item = (usize, i64)>,
    ) -> CellId {
        assert!(dim >= 1, "vertices are added with add_vertex");
        if self.cells.len() < dim {
            self.cells.resize_with(dim, Vec::new);
        }
        let list = &mut self.cells[dim - 1];
        list.push(faces.into_iter().collect());
        CellId::new(dim, list.len() - 1)
    }

    pub fn weights(mut self, weights: Vec<Vec<f64>>) -> Self {
        self.weights = Some(weights);
        self
    }

    pub fn build(self) -> Result<CellComplex, ComplexError> {
        CellComplex::from_boundaries(self.vertices, self.cells, self.weights)
    }
}

/// A validated, immutable weighted regular cell complex.
#[derive(Clone, Debug)]
pub struct CellComplex {
    /// `boundaries[p][i]`: faces of the `i`-th `p`-cell (empty for `p = 0`).
    boundaries: Vec<Vec<Vec<Incidence>>>,
    /// `coboundaries[p][i]`: cofaces of the `i`-th `p`-cell.
    coboundaries: Vec<Vec<Vec<Incidence>>>,
    weights: Vec<Vec<f64>>,
    offsets: Vec<usize>,
    vectors: Vec<IncidenceVector>,
    vector_lookup: HashMap<(CellId, CellId), usize>,
    /// Per global cell index: vectors `(c > σ)`.
    vectors_below: Vec<Vec<usize>>,
    /// Per global cell index: vectors `(τ > c)`.
    vectors_above: Vec<Vec<usize>>,
}

impl CellComplex {
    /// Builds and validates a complex.
    ///
    /// `boundaries[k]` lists the cells of dimension `k + 1`; each cell is a
    /// list of `(face index, incidence number)`. Trailing empty dimensions are
    /// dropped. When `weights` is `None` every cell gets weight `1.0`.
    pub fn from_boundaries(
        vertices: usize,
        boundaries: Vec<Vec<Vec<(usize, i64)>>>,
        weights: Option<Vec<Vec<f64>>>,
    ) -> Result<Self, ComplexError> {
        if vertices == 0 {
            return Err(ComplexError::Empty);
        }
        let mut counts = vec![vertices];
        counts.extend(boundaries.iter().map(Vec::len));
        while counts.len() > 1 && counts[counts.len() - 1] == 0 {
            counts.pop();
        }
        let top = counts.len() - 1;

        let mut checked: Vec<Vec<Vec<Incidence>>> = vec![vec![Vec::new(); vertices]];
        for (k, cells) in boundaries.into_iter().enumerate().take(top) {
            let dim = k + 1;
            let mut layer = Vec::with_capacity(cells.len());
            for (index, faces) in cells.into_iter().enumerate() {
                let cell = CellId::new(dim, index);
                if faces.len() < 2 {
                    return Err(ComplexError::TooFewFaces {
                        cell,
                        count: faces.len(),
                    });
                }
                let mut seen = BTreeSet::new();
                let mut list = Vec::with_capacity(faces.len());
                for (face_index, sign) in faces {
                    let face = CellId::new(dim - 1, face_index);
                    if face_index >= counts[dim - 1] {
                        return Err(ComplexError::DanglingFace { cell, face });
                    }
                    if sign != 1 && sign != -1 {
                        return Err(ComplexError::BadSign { cell, face, sign });
                    }
                    if !seen.insert(face_index) {
                        return Err(ComplexError::RepeatedFace { cell, face });
                    }
                    list.push(Incidence {
                        cell: face_index,
                        sign: sign as i8,
                    });
                }
                layer.push(list);
            }
            checked.push(layer);
        }

        check_square_zero(&checked)?;

        let weights = match weights {
            None => counts.iter().map(|&n| vec![1.0; n]).collect(),
            Some(mut w) => {
                while w.len() > counts.len() && w.last().is_some_and(Vec::is_empty) {
                    w.pop();
                }
                if w.len() != counts.len() {
                    let dim = w.len().min(counts.len());
                    return Err(ComplexError::WeightShape {
                        dim,
                        given: w.get(dim).map_or(0, Vec::len),
                        expected: counts.get(dim).copied().unwrap_or(0),
                    });
                }
                for (dim, (row, &n)) in w.iter().zip(&counts).enumerate() {
                    if row.len() != n {
                        return Err(ComplexError::WeightShape {
                            dim,
                            given: row.len(),
                            expected: n,
                        });
                    }
                    for (index, &weight) in row.iter().enumerate() {
                        if !(weight.is_finite() && weight > 0.0) {
                            return Err(ComplexError::NonPositiveWeight {
                                cell: CellId::new(dim, index),
                                weight,
                            });
                        }
                    }
                }
                w
            }
        };

        Ok(Self::assemble(checked, weights))
    }

    fn assemble(boundaries: Vec<Vec<Vec<Incidence>>>, weights: Vec<Vec<f64>>) -> Self {
        let counts: Vec<usize> = boundaries.iter().map(Vec::len).collect();
        let mut coboundaries: Vec<Vec<Vec<Incidence>>> =
            counts.iter().map(|&n| vec![Vec::new(); n]).collect();
        for (dim, layer) in boundaries.iter().enumerate().skip(1) {
            for (index, faces) in layer.iter().enumerate() {
                for inc in faces {
                    coboundaries[dim - 1][inc.cell].push(Incidence {
                        cell: index,
                        sign: inc.sign,
                    });
                }
            }
        }

        let mut offsets = Vec::with_capacity(counts.len() + 1);
        let mut total = 0;
        for &n in &counts {
            offsets.push(total);
            total += n;
        }
        offsets.push(total);

        // Ordered by (dim τ, index τ, index σ).
        let mut vectors = Vec::new();
        for (dim, layer) in boundaries.iter().enumerate().skip(1) {
            for (index, faces) in layer.iter().enumerate() {
                let mut sorted = faces.clone();
                sorted.sort_by_key(|inc| inc.cell);
                for inc in sorted {
                    vectors.push(IncidenceVector {
                        tau: CellId::new(dim, index),
                        sigma: CellId::new(dim - 1, inc.cell),
                        sign: inc.sign,
                    });
                }
            }
        }
        let mut vector_lookup = HashMap::with_capacity(vectors.len());
        let mut vectors_below = vec![Vec::new(); total];
        let mut vectors_above = vec![Vec::new(); total];
        for (k, v) in vectors.iter().enumerate() {
            vector_lookup.insert((v.tau, v.sigma), k);
            vectors_below[offsets[v.tau.dim] + v.tau.index].push(k);
            vectors_above[offsets[v.sigma.dim] + v.sigma.index].push(k);
        }

        Self {
            boundaries,
            coboundaries,
            weights,
            offsets,
            vectors,
            vector_lookup,
            vectors_below,
            vectors_above,
        }
    }

    /// Top dimension `n`.
    pub fn dim(&self) -> usize {
        self.boundaries.len() - 1
    }

    /// Number of cells of dimension `dim` (zero above the top dimension).
    pub fn count(&self, dim: usize) -> usize {
        self.boundaries.get(dim).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.boundaries.iter().map(Vec::len).collect()
    }

    /// Total number of cells over all dimensions.
    pub fn len(&self) -> usize {
        self.offsets[self.offsets.len() - 1]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, cell: CellId) -> bool {
        cell.index < self.count(cell.dim)
    }

    /// All cells, ordered by dimension then index.
    pub fn cells(&self) -> impl Iterator<Item = CellId> + '_ {
        self.boundaries
            .iter()
            .enumerate()
            .flat_map(|(dim, layer)| (0..layer.len()).map(move |i| CellId::new(dim, i)))
    }

    pub fn cells_of_dim(&self, dim: usize) -> impl Iterator<Item = CellId> {
        (0..self.count(dim)).map(move |i| CellId::new(dim, i))
    }

    /// Position of `cell` in the order of [`CellComplex::cells`].
    pub fn global_index(&self, cell: CellId) -> usize {
        self.offsets[cell.dim] + cell.index
    }

    pub fn cell_at(&self, global: usize) -> CellId {
        let dim = self.offsets.partition_point(|&o| o <= global) - 1;
        CellId::new(dim, global - self.offsets[dim])
    }

    pub fn faces(&self, cell: CellId) -> &[Incidence] {
        &self.boundaries[cell.dim][cell.index]
    }

    pub fn cofaces(&self, cell: CellId) -> &[Incidence] {
        &self.coboundaries[cell.dim][cell.index]
    }

    /// The incidence number `[τ : σ]`, if `σ` is a face of `τ`.
    pub fn incidence(&self, tau: CellId, sigma: CellId) -> Option<i8> {
        if tau.dim != sigma.dim + 1 || !self.contains(tau) {
            return None;
        }
        self.faces(tau)
            .iter()
            .find(|inc| inc.cell == sigma.index)
            .map(|inc| inc.sign)
    }

    pub fn weight(&self, cell: CellId) -> f64 {
        self.weights[cell.dim][cell.index]
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    /// True when every cell carries the same weight.
    pub fn has_constant_weights(&self) -> bool {
        let first = self.weights[0][0];
        self.weights.iter().flatten().all(|&w| w == first)
    }

    /// Boundary lists in the input format of [`CellComplex::from_boundaries`].
    pub fn boundary_lists(&self) -> Vec<Vec<Vec<(usize, i64)>>> {
        self.boundaries[1..]
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .map(|faces| {
                        faces
                            .iter()
                            .map(|inc| (inc.cell, i64::from(inc.sign)))
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// The same cells with different weights.
    pub fn with_weights(&self, weights: Vec<Vec<f64>>) -> Result<Self, ComplexError> {
        Self::from_boundaries(self.count(0), self.boundary_lists(), Some(weights))
    }

    /// Reverses the orientation of one cell: every incidence number between
    /// `cell` and its faces or cofaces changes sign.
    pub fn with_flipped_orientation(&self, cell: CellId) -> Result<Self, ComplexError> {
        if !self.contains(cell) {
            return Err(ComplexError::UnknownCell(cell));
        }
        let mut boundaries = self.boundaries.clone();
        for inc in &mut boundaries[cell.dim][cell.index] {
            inc.sign = -inc.sign;
        }
        if let Some(layer) = boundaries.get_mut(cell.dim + 1) {
            for faces in layer.iter_mut() {
                for inc in faces.iter_mut().filter(|inc| inc.cell == cell.index) {
                    inc.sign = -inc.sign;
                }
            }
        }
        Ok(Self::assemble(boundaries, self.weights.clone()))
    }

    /// Renumbers cells: `permutation[p][old] = new` for every dimension `p`.
    pub fn relabeled(&self, permutation: &[Vec<usize>]) -> Result<Self, ComplexError> {
        let counts = self.counts();
        let mut weights: Vec<Vec<f64>> = counts.iter().map(|&n| vec![0.0; n]).collect();
        let mut boundaries: Vec<Vec<Vec<(usize, i64)>>> =
            counts[1..].iter().map(|&n| vec![Vec::new(); n]).collect();
        for cell in self.cells() {
            let new = permutation[cell.dim][cell.index];
            weights[cell.dim][new] = self.weight(cell);
            if cell.dim > 0 {
                boundaries[cell.dim - 1][new] = self
                    .faces(cell)
                    .iter()
                    .map(|inc| (permutation[cell.dim - 1][inc.cell], i64::from(inc.sign)))
                    .collect();
            }
        }
        Self::from_boundaries(counts[0], boundaries, Some(weights))
    }

    /// The integer matrix of `∂_p : C_p → C_{p-1}` (rows are `(p-1)`-cells).
    pub fn boundary_matrix(&self, p: usize) -> Result<DMatrix<i64>, ComplexError> {
        if p == 0 || p > self.dim() {
            return Err(ComplexError::DimensionOutOfRange {
                dim: p,
                top: self.dim(),
            });
        }
        let mut m = DMatrix::zeros(self.count(p - 1), self.count(p));
        for (col, faces) in self.boundaries[p].iter().enumerate() {
            for inc in faces {
                m[(inc.cell, col)] = i64::from(inc.sign);
            }
        }
        Ok(m)
    }

    /// Applies `∂` to a chain, possibly mixing dimensions.
    pub fn boundary(&self, chain: &Chain) -> Chain {
        let mut out = Chain::new();
        for (&cell, &coef) in chain.iter() {
            for inc in self.faces(cell) {
                out.add(
                    CellId::new(cell.dim - 1, inc.cell),
                    coef * f64::from(inc.sign),
                );
            }
        }
        out
    }

    /// The cell together with all of its iterated faces.
    pub fn closure(&self, cell: CellId) -> Result<BTreeSet<CellId>, ComplexError> {
        if !self.contains(cell) {
            return Err(ComplexError::UnknownCell(cell));
        }
        Ok(self.closure_of(cell))
    }

    pub(crate) fn closure_of(&self, cell: CellId) -> BTreeSet<CellId> {
        let mut seen = BTreeSet::from([cell]);
        let mut queue = VecDeque::from([cell]);
        while let Some(c) = queue.pop_front() {
            if c.dim == 0 {
                continue;
            }
            for inc in self.faces(c) {
                let face = CellId::new(c.dim - 1, inc.cell);
                if seen.insert(face) {
                    queue.push_back(face);
                }
            }
        }
        seen
    }

    /// The first pair of `(p+1)`-cells that breaks quasiconvexity, scanning
    /// by dimension, shared cell, then cell pair.
    pub fn quasiconvexity_violation(&self) -> Option<QuasiconvexViolation> {
        let mut closures: HashMap<CellId, BTreeSet<CellId>> = HashMap::new();
        let mut closure = |c: CellId| {
            closures
                .entry(c)
                .or_insert_with(|| self.closure_of(c))
                .clone()
        };
        for p in 0..self.dim() {
            for shared in self.cells_of_dim(p) {
                let cofaces: Vec<usize> = {
                    let mut v: Vec<usize> = self.cofaces(shared).iter().map(|i| i.cell).collect();
                    v.sort_unstable();
                    v
                };
                for (k, &a) in cofaces.iter().enumerate() {
                    for &b in &cofaces[k + 1..] {
                        let first = CellId::new(p + 1, a);
                        let second = CellId::new(p + 1, b);
                        let ca = closure(first);
                        let cb = closure(second);
                        let intersection: BTreeSet<CellId> =
                            ca.intersection(&cb).copied().collect();
                        if intersection != closure(shared) {
                            return Some(QuasiconvexViolation {
                                first,
                                second,
                                shared,
                                intersection,
                            });
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_quasiconvex(&self) -> bool {
        self.quasiconvexity_violation().is_none()
    }

    /// `Σ_p (-1)^p #(p-cells)`.
    pub fn euler_characteristic(&self) -> i64 {
        self.boundaries
            .iter()
            .enumerate()
            .map(|(p, layer)| {
                if p % 2 == 0 {
                    layer.len() as i64
                } else {
                    -(layer.len() as i64)
                }
            })
            .sum()
    }

    /// Number of edges at a vertex, or number of boundary edges of a 2-cell.
    pub fn degree(&self, cell: CellId) -> Result<usize, ComplexError> {
        if !self.contains(cell) {
            return Err(ComplexError::UnknownCell(cell));
        }
        match cell.dim {
            0 => Ok(self.cofaces(cell).len()),
            2 => Ok(self.faces(cell).len()),
            _ => Err(ComplexError::UnsupportedDimension(cell)),
        }
    }

    /// True for a 2-complex in which every edge bounds exactly two 2-cells
    /// and the link of every vertex is a single cycle.
    pub fn is_closed_surface(&self) -> bool {
        if self.dim() != 2 {
            return false;
        }
        if self.cells_of_dim(1).any(|e| self.cofaces(e).len() != 2) {
            return false;
        }
        self.cells_of_dim(0).all(|v| self.vertex_link_is_cycle(v))
    }

    fn vertex_link_is_cycle(&self, v: CellId) -> bool {
        let edges: Vec<usize> = self.cofaces(v).iter().map(|i| i.cell).collect();
        if edges.is_empty() {
            return false;
        }
        let position: HashMap<usize, usize> =
            edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        let faces: BTreeSet<usize> = edges
            .iter()
            .flat_map(|&e| self.coboundaries[1][e].iter().map(|i| i.cell))
            .collect();
        let mut adjacency = vec![Vec::new(); edges.len()];
        for f in faces {
            let at_v: Vec<usize> = self.boundaries[2][f]
                .iter()
                .filter_map(|inc| position.get(&inc.cell).copied())
                .collect();
            if at_v.len() != 2 {
                return false;
            }
            adjacency[at_v[0]].push(at_v[1]);
            adjacency[at_v[1]].push(at_v[0]);
        }
        if adjacency.iter().any(|n| n.len() != 2) {
            return false;
        }
        let mut seen = vec![false; edges.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(k) = stack.pop() {
            for &m in &adjacency[k] {
                if !seen[m] {
                    seen[m] = true;
                    stack.push(m);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// All incidence vectors, ordered by `(dim τ, index τ, index σ)`.
    pub fn vectors(&self) -> &[IncidenceVector] {
        &self.vectors
    }

    pub fn vector_index(&self, tau: CellId, sigma: CellId) -> Option<usize> {
        self.vector_lookup.get(&(tau, sigma)).copied()
    }

    /// Indices of the vectors `(cell > σ)`.
    pub fn vectors_below(&self, cell: CellId) -> &[usize] {
        &self.vectors_below[self.global_index(cell)]
    }

    /// Indices of the vectors `(τ > cell)`.
    pub fn vectors_above(&self, cell: CellId) -> &[usize] {
        &self.vectors_above[self.global_index(cell)]
    }
}

fn check_square_zero(boundaries: &[Vec<Vec<Incidence>>]) -> Result<(), ComplexError> {
    for p in 1..boundaries.len().saturating_sub(1) {
        for (col, faces) in boundaries[p + 1].iter().enumerate() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for outer in faces {
                for inner in &boundaries[p][outer.cell] {
                    *acc.entry(inner.cell).or_default() +=
                        i64::from(outer.sign) * i64::from(inner.sign);
                }
            }
            if let Some((&row, &value)) = acc.iter().find(|(_, &v)| v != 0) {
                return Err(ComplexError::BoundaryNotSquareZero { p, row, col, value });
            }
        }
    }
    Ok(())
}

/// A finitely supported real chain in `C_*(M) = ⊕_p C_p(M)`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Chain {
    coefficients: BTreeMap<CellId, f64>,
}

impl Chain {
    pub fn new() -> Self {
        Self::default()
    }

    /// The elementary chain `1·cell`.
    pub fn cell(cell: CellId) -> Self {
        let mut c = Self::new();
        c.add(cell, 1.0);
        c
    }

    pub fn add(&mut self, cell: CellId, value: f64) {
        *self.coefficients.entry(cell).or_default() += value;
    }

    pub fn get(&self, cell: CellId) -> f64 {
        self.coefficients.get(&cell).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CellId, &f64)> {
        self.coefficients.iter()
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.coefficients.values().fold(0.0, |m, v| m.max(v.abs()))
    }
}
