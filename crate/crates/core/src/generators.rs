//! Canonical complexes: graphs, platonic surfaces, torus grids and a few
//! pathological fixtures.
//!
//! Surfaces are described by polygon vertex cycles and assembled with
//! [`polygon_surface`]; edges are oriented from the lower to the higher
//! vertex index and a face meets an edge with sign `+1` when its traversal
//! runs along that orientation.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::Rng;
use thiserror::Error;

use crate::complex::{CellComplex, ComplexBuilder, ComplexError};

#[derive(Debug, Error, PartialEq)]
pub enum GeneratorError {
    #[error("bad parameter for `{kind}`: {reason}")]
    BadParameter { kind: String, reason: String },
    #[error("unknown generator `{0}`")]
    UnknownKind(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn bad(kind: &str, reason: impl Into<String>) -> GeneratorError {
    GeneratorError::BadParameter {
        kind: kind.to_owned(),
        reason: reason.into(),
    }
}

/// Builds a 1-complex; every edge `(a, b)` gets `∂e = max(a,b) - min(a,b)`.
pub fn graph(vertices: usize, edges: &[(usize, usize)]) -> Result<CellComplex, ComplexError> {
    let mut b = ComplexBuilder::new(vertices);
    for &(a, c) in edges {
        b.add_cell(1, [(a.min(c), -1), (a.max(c), 1)]);
    }
    b.build()
}

/// Builds a 2-complex from polygon vertex cycles.
///
/// The edge set is derived from consecutive vertex pairs and sorted by
/// `(low, high)`.
pub fn polygon_surface(vertices: usize, faces: &[Vec<usize>]) -> Result<CellComplex, ComplexError> {
    let mut edge_set = BTreeSet::new();
    for face in faces {
        for (a, b) in cycle_pairs(face) {
            edge_set.insert((a.min(b), a.max(b)));
        }
    }
    let edges: Vec<(usize, usize)> = edge_set.into_iter().collect();
    let index: HashMap<(usize, usize), usize> =
        edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let mut builder = ComplexBuilder::new(vertices);
    for &(lo, hi) in &edges {
        builder.add_cell(1, [(lo, -1), (hi, 1)]);
    }
    for face in faces {
        let boundary: Vec<(usize, i64)> = cycle_pairs(face)
            .map(|(a, b)| (index[&(a.min(b), a.max(b))], if a < b { 1 } else { -1 }))
            .collect();
        builder.add_cell(2, boundary);
    }
    builder.build()
}

fn cycle_pairs(face: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..face.len()).map(move |k| (face[k], face[(k + 1) % face.len()]))
}

pub fn cycle(n: usize) -> Result<CellComplex, GeneratorError> {
    if n < 3 {
        return Err(bad("cycle", "needs at least 3 vertices"));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(graph(n, &edges)?)
}

/// Path on `n` vertices; `path(2)` is the interval.
pub fn path(n: usize) -> Result<CellComplex, GeneratorError> {
    if n == 0 {
        return Err(bad("path", "needs at least 1 vertex"));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(graph(n, &edges)?)
}

pub fn complete(n: usize) -> Result<CellComplex, GeneratorError> {
    if n == 0 {
        return Err(bad("complete", "needs at least 1 vertex"));
    }
    let edges: Vec<_> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    Ok(graph(n, &edges)?)
}

/// The star `K_{1,n}`; the center is vertex 0.
pub fn star(n: usize) -> Result<CellComplex, GeneratorError> {
    if n == 0 {
        return Err(bad("star", "needs at least 1 leaf"));
    }
    let edges: Vec<_> = (1..=n).map(|i| (0, i)).collect();
    Ok(graph(n + 1, &edges)?)
}

pub fn petersen() -> CellComplex {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    graph(10, &edges).expect("petersen graph is valid")
}

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<CellComplex, GeneratorError> {
    if n == 0 {
        return Err(bad("random_graph", "needs at least 1 vertex"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(bad("random_graph", "edge probability must lie in [0, 1]"));
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Ok(graph(n, &edges)?)
}

fn tetrahedron_faces() -> Vec<Vec<usize>> {
    vec![vec![0, 1, 2], vec![0, 3, 1], vec![1, 3, 2], vec![2, 3, 0]]
}

fn cube_faces() -> Vec<Vec<usize>> {
    // vertex bits: x = 1, y = 2, z = 4
    vec![
        vec![0, 2, 3, 1],
        vec![4, 5, 7, 6],
        vec![0, 1, 5, 4],
        vec![2, 6, 7, 3],
        vec![0, 4, 6, 2],
        vec![1, 3, 7, 5],
    ]
}

fn octahedron_faces() -> Vec<Vec<usize>> {
    // 0/1 = ±x, 2/3 = ±y, 4/5 = ±z
    let mut faces = Vec::new();
    for x in [0, 1] {
        for y in [2, 3] {
            for z in [4, 5] {
                faces.push(vec![x, y, z]);
            }
        }
    }
    faces
}

fn icosahedron_faces() -> Vec<Vec<usize>> {
    // 0 top, 1..=5 upper ring, 6..=10 lower ring, 11 bottom
    let up = |k: usize| 1 + k % 5;
    let low = |k: usize| 6 + k % 5;
    let mut faces = Vec::new();
    for k in 0..5 {
        faces.push(vec![0, up(k), up(k + 1)]);
        faces.push(vec![up(k), low(k), up(k + 1)]);
        faces.push(vec![up(k + 1), low(k), low(k + 1)]);
        faces.push(vec![11, low(k + 1), low(k)]);
    }
    faces
}

/// Dual polygon decomposition of a closed, coherently oriented polygon
/// surface: one vertex per face, one face per vertex.
fn dual_faces(vertices: usize, faces: &[Vec<usize>]) -> Vec<Vec<usize>> {
    // (v, next vertex after v) -> face
    let mut outgoing: HashMap<(usize, usize), usize> = HashMap::new();
    let mut start = vec![usize::MAX; vertices];
    for (f, face) in faces.iter().enumerate() {
        for (a, b) in cycle_pairs(face) {
            outgoing.insert((a, b), f);
            if start[a] == usize::MAX {
                start[a] = f;
            }
        }
    }
    let next_after = |face: &[usize], v: usize| {
        let k = face.iter().position(|&x| x == v).expect("vertex on face");
        face[(k + 1) % face.len()]
    };
    let prev_before = |face: &[usize], v: usize| {
        let k = face.iter().position(|&x| x == v).expect("vertex on face");
        face[(k + face.len() - 1) % face.len()]
    };
    (0..vertices)
        .map(|v| {
            let mut ring = vec![start[v]];
            loop {
                let current = *ring.last().unwrap();
                // the neighbouring face across the edge (prev -> v) runs v -> prev
                let prev = prev_before(&faces[current], v);
                let next_face = outgoing[&(v, prev)];
                if next_face == ring[0] {
                    break;
                }
                debug_assert_ne!(next_after(&faces[next_face], v), v);
                ring.push(next_face);
            }
            ring
        })
        .collect()
}

pub fn tetrahedron() -> CellComplex {
    polygon_surface(4, &tetrahedron_faces()).expect("tetrahedron is valid")
}

pub fn cube() -> CellComplex {
    polygon_surface(8, &cube_faces()).expect("cube is valid")
}

pub fn octahedron() -> CellComplex {
    polygon_surface(6, &octahedron_faces()).expect("octahedron is valid")
}

pub fn icosahedron() -> CellComplex {
    polygon_surface(12, &icosahedron_faces()).expect("icosahedron is valid")
}

pub fn dodecahedron() -> CellComplex {
    let ico = icosahedron_faces();
    polygon_surface(ico.len(), &dual_faces(12, &ico)).expect("dodecahedron is valid")
}

pub fn platonic_solids() -> Vec<CellComplex> {
    vec![
        tetrahedron(),
        cube(),
        octahedron(),
        dodecahedron(),
        icosahedron(),
    ]
}

fn torus_faces(p: usize, q: usize) -> Vec<Vec<usize>> {
    let v = |i: usize, j: usize| (i % p) * q + (j % q);
    let mut faces = Vec::with_capacity(p * q);
    for i in 0..p {
        for j in 0..q {
            faces.push(vec![v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)]);
        }
    }
    faces
}

/// Square grid on the torus with `p·q` vertices, edges and faces.
///
/// Both sides must be at least 3: on a 2-wide grid two squares share two
/// edges and quasiconvexity fails.
pub fn torus_grid(p: usize, q: usize) -> Result<CellComplex, GeneratorError> {
    if p < 3 || q < 3 {
        return Err(bad("torus_grid", "both sides must be at least 3"));
    }
    Ok(polygon_surface(p * q, &torus_faces(p, q))?)
}

/// Two 4×4 torus grids, each with one square removed, glued along the two
/// square boundary rings: a closed genus-2 surface (V=28, E=60, F=30).
pub fn genus2() -> CellComplex {
    let mut faces: Vec<Vec<usize>> = torus_faces(4, 4).into_iter().skip(1).collect();
    let ring = [0usize, 4, 5, 1];
    let mut remap: BTreeMap<usize, usize> = ring.iter().map(|&r| (r, r)).collect();
    let mut next = 16;
    for face in torus_faces(4, 4).into_iter().skip(1) {
        faces.push(
            face.into_iter()
                .map(|v| {
                    *remap.entry(v).or_insert_with(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect(),
        );
    }
    polygon_surface(next, &faces).expect("genus-2 surface is valid")
}

/// The `n`-gonal prism: two `n`-gons joined by `n` squares.
pub fn prism(n: usize) -> Result<CellComplex, GeneratorError> {
    if n < 3 {
        return Err(bad("prism", "needs at least 3 sides"));
    }
    let mut faces = vec![(0..n).collect::<Vec<_>>(), (n..2 * n).rev().collect()];
    for k in 0..n {
        let k1 = (k + 1) % n;
        faces.push(vec![k1, k, n + k, n + k1]);
    }
    Ok(polygon_surface(2 * n, &faces)?)
}

/// Random triangulated sphere: the icosahedron after up to `flips` edge
/// flips. A flip is skipped when it would drop a vertex below degree 3 or
/// duplicate an edge, so the result stays a simplicial sphere.
pub fn flipped_icosahedron<R: Rng>(flips: usize, rng: &mut R) -> CellComplex {
    let mut faces = icosahedron_faces();
    for _ in 0..flips {
        let f = rng.random_range(0..faces.len());
        let k = rng.random_range(0..3);
        let (a, b, c) = (faces[f][k], faces[f][(k + 1) % 3], faces[f][(k + 2) % 3]);
        let Some(g) = faces
            .iter()
            .position(|t| cycle_pairs(t).any(|e| e == (b, a)))
        else {
            continue;
        };
        let m = faces[g].iter().position(|&x| x == b).unwrap();
        let d = faces[g][(m + 2) % 3];
        let degree = |v: usize| {
            faces
                .iter()
                .flat_map(|t| cycle_pairs(t))
                .filter(|&(x, _)| x == v)
                .count()
        };
        let adjacent = faces
            .iter()
            .flat_map(|t| cycle_pairs(t))
            .any(|e| e == (c, d) || e == (d, c));
        if adjacent || degree(a) <= 3 || degree(b) <= 3 {
            continue;
        }
        faces[f] = vec![c, a, d];
        faces[g] = vec![d, b, c];
    }
    polygon_surface(12, &faces).expect("edge flips preserve validity")
}

/// Two tetrahedron surfaces sharing vertex 0: every edge bounds two faces
/// but the link of vertex 0 is two cycles.
pub fn sphere_pair() -> CellComplex {
    let mut faces = tetrahedron_faces();
    let shift = |v: usize| if v == 0 { 0 } else { v + 3 };
    faces.extend(
        tetrahedron_faces()
            .into_iter()
            .map(|f| f.into_iter().map(shift).collect()),
    );
    polygon_surface(7, &faces).expect("sphere pair is valid")
}

/// Open cylinder made of two squares glued along two opposite edges, with
/// doubled top and bottom edges. Valid and regular, but not quasiconvex.
pub fn two_square_cylinder() -> CellComplex {
    // vertices: b0 = 0, b1 = 1, t0 = 2, t1 = 3
    let mut b = ComplexBuilder::new(4);
    b.add_cell(1, [(2, 1), (0, -1)]); // v0: b0 -> t0
    b.add_cell(1, [(3, 1), (1, -1)]); // v1: b1 -> t1
    b.add_cell(1, [(3, 1), (2, -1)]); // ta: t0 -> t1
    b.add_cell(1, [(3, 1), (2, -1)]); // tb
    b.add_cell(1, [(1, 1), (0, -1)]); // ba: b0 -> b1
    b.add_cell(1, [(1, 1), (0, -1)]); // bb
    b.add_cell(2, [(4, 1), (1, 1), (2, -1), (0, -1)]);
    b.add_cell(2, [(5, 1), (1, 1), (3, -1), (0, -1)]);
    b.build().expect("cylinder is valid")
}

/// Builds a complex from a `kind[:params]` description such as `cycle:5`,
/// `torus_grid:4x4` or `icosahedron`.
pub fn generate(spec: &str) -> Result<CellComplex, GeneratorError> {
    let (kind, params) = match spec.split_once(':') {
        Some((k, p)) => (k, Some(p)),
        None => (spec, None),
    };
    let count = |name: &str| -> Result<usize, GeneratorError> {
        params
            .ok_or_else(|| bad(name, "missing size parameter"))?
            .parse()
            .map_err(|_| bad(name, "size must be a non-negative integer"))
    };
    let no_params = |c: CellComplex| -> Result<CellComplex, GeneratorError> {
        match params {
            None => Ok(c),
            Some(_) => Err(bad(kind, "takes no parameters")),
        }
    };
    match kind {
        "cycle" => cycle(count(kind)?),
        "path" => path(count(kind)?),
        "interval" => no_params(path(2)?),
        "complete" => complete(count(kind)?),
        "star" => star(count(kind)?),
        "prism" => prism(count(kind)?),
        "petersen" => no_params(petersen()),
        "tetrahedron" => no_params(tetrahedron()),
        "cube" => no_params(cube()),
        "octahedron" => no_params(octahedron()),
        "dodecahedron" => no_params(dodecahedron()),
        "icosahedron" => no_params(icosahedron()),
        "genus2" => no_params(genus2()),
        "cylinder2" => no_params(two_square_cylinder()),
        "sphere_pair" => no_params(sphere_pair()),
        "torus_grid" => {
            let p = params.ok_or_else(|| bad(kind, "expected PxQ"))?;
            let (a, b) = p.split_once('x').ok_or_else(|| bad(kind, "expected PxQ"))?;
            let parse = |s: &str| s.parse::<usize>().map_err(|_| bad(kind, "expected PxQ"));
            torus_grid(parse(a)?, parse(b)?)
        }
        other => Err(GeneratorError::UnknownKind(other.to_owned())),
    }
}
