use rand::Rng;
use serde::Serialize;

use super::ricci::CurvatureContext;
use super::CurvatureError;
use crate::calculus::OneForm;
use crate::complex::{CellComplex, CellId};

/// The two classes of complexes covered by the Gauss–Bonnet theorems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexClass {
    Graph,
    ClosedSurface,
}

pub fn classify(complex: &CellComplex) -> Result<ComplexClass, CurvatureError> {
    match complex.dim() {
        0 | 1 => Ok(ComplexClass::Graph),
        2 if complex.is_closed_surface() => Ok(ComplexClass::ClosedSurface),
        2 => Err(CurvatureError::NotClosedSurface),
        dim => Err(CurvatureError::UnsupportedComplexClass { dim }),
    }
}

fn require_constant_weights(complex: &CellComplex) -> Result<(), CurvatureError> {
    if complex.has_constant_weights() {
        Ok(())
    } else {
        Err(CurvatureError::NonConstantWeights)
    }
}

fn require_dim(complex: &CellComplex, cell: CellId, dim: usize) -> Result<i64, CurvatureError> {
    if cell.dim != dim || !complex.contains(cell) {
        return Err(CurvatureError::WrongCell {
            cell,
            expected: dim,
        });
    }
    Ok(complex.degree(cell).expect("vertex or face") as i64)
}

/// `g_v = 2 − deg v` on graphs, `4 − deg v` on closed surfaces.
pub fn gauss_curvature_vertex(complex: &CellComplex, v: CellId) -> Result<i64, CurvatureError> {
    require_constant_weights(complex)?;
    let class = classify(complex)?;
    let deg = require_dim(complex, v, 0)?;
    Ok(match class {
        ComplexClass::Graph => 2 - deg,
        ComplexClass::ClosedSurface => 4 - deg,
    })
}

/// `S(v) = deg v · g_v`, the trace of the localized Ricci form over an
/// orthonormal basis of the `deg v` vectors at `v`.
pub fn scalar_curvature_vertex(complex: &CellComplex, v: CellId) -> Result<i64, CurvatureError> {
    let g = gauss_curvature_vertex(complex, v)?;
    Ok(complex.degree(v).expect("checked vertex") as i64 * g)
}

/// `g_f = 4 − deg f` on closed surfaces.
pub fn gauss_curvature_face(complex: &CellComplex, f: CellId) -> Result<i64, CurvatureError> {
    require_constant_weights(complex)?;
    if classify(complex)? != ComplexClass::ClosedSurface {
        return Err(CurvatureError::UnsupportedComplexClass { dim: complex.dim() });
    }
    Ok(4 - require_dim(complex, f, 2)?)
}

/// `S(f) = deg f · (4 − deg f)`.
pub fn scalar_curvature_face(complex: &CellComplex, f: CellId) -> Result<i64, CurvatureError> {
    let g = gauss_curvature_face(complex, f)?;
    Ok(complex.degree(f).expect("checked face") as i64 * g)
}

/// The vectors a unit form localized at `cell` lives on: `(e>v)` for a
/// vertex, `(f>e)` for a face.
pub fn local_vectors(complex: &CellComplex, cell: CellId) -> Result<&[usize], CurvatureError> {
    match cell.dim {
        0 if complex.contains(cell) => Ok(complex.vectors_above(cell)),
        2 if complex.contains(cell) => Ok(complex.vectors_below(cell)),
        _ => Err(CurvatureError::WrongCell { cell, expected: 0 }),
    }
}

/// `Σ (w_low/w_high)² ω²` over the local vectors of `cell`.
pub fn local_norm_sq(
    complex: &CellComplex,
    omega: &OneForm,
    cell: CellId,
) -> Result<f64, CurvatureError> {
    Ok(local_vectors(complex, cell)?
        .iter()
        .map(|&k| {
            let v = complex.vectors()[k];
            (complex.weight(v.sigma) / complex.weight(v.tau)).powi(2) * omega.get(k).powi(2)
        })
        .sum())
}

/// A random 1-form supported on the local vectors of `cell` with unit local
/// norm.
pub fn random_unit_form<R: Rng>(
    complex: &CellComplex,
    cell: CellId,
    rng: &mut R,
) -> Result<OneForm, CurvatureError> {
    let mut omega = OneForm::zeros(complex);
    let local = local_vectors(complex, cell)?;
    if local.is_empty() {
        return Err(CurvatureError::NormalizationViolated { norm_sq: 0.0 });
    }
    loop {
        for &k in local {
            omega.coefficients_mut()[k] = rng.random_range(-1.0..=1.0);
        }
        let norm = local_norm_sq(complex, &omega, cell)?.sqrt();
        if norm > 1e-3 {
            for &k in local {
                omega.coefficients_mut()[k] /= norm;
            }
            return Ok(omega);
        }
    }
}

fn check_unit(complex: &CellComplex, omega: &OneForm, cell: CellId) -> Result<(), CurvatureError> {
    let norm_sq = local_norm_sq(complex, omega, cell)?;
    if (norm_sq - 1.0).abs() > 1e-10 {
        return Err(CurvatureError::NormalizationViolated { norm_sq });
    }
    Ok(())
}

/// `Σ Ric(ω)` over the local vectors of a vertex or face, using the closed
/// form; for a unit form at constant weights this is `g_v` or `g_f`.
pub fn unit_form_trace_check(
    ctx: &CurvatureContext<'_>,
    omega: &OneForm,
    cell: CellId,
) -> Result<f64, CurvatureError> {
    let complex = ctx.complex();
    check_unit(complex, omega, cell)?;
    Ok(local_vectors(complex, cell)?
        .iter()
        .map(|&k| ctx.ricci_closed_form(omega, k))
        .sum())
}

/// The same trace through the definition `⟨Δω,ω⟩ − ½|∇ω|² + ½Δ♭|ω|²`.
pub fn unit_form_trace_definition(
    ctx: &CurvatureContext<'_>,
    omega: &OneForm,
    cell: CellId,
) -> Result<f64, CurvatureError> {
    let complex = ctx.complex();
    check_unit(complex, omega, cell)?;
    let ric = ctx.ricci_definition_all(omega);
    Ok(local_vectors(complex, cell)?.iter().map(|&k| ric[k]).sum())
}

/// Curvature of one vertex or face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellCurvature {
    pub id: String,
    pub degree: usize,
    pub g: i64,
    #[serde(rename = "S")]
    pub s: i64,
}

/// Ricci values of one vector by both routes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RicciEntry {
    pub vector: String,
    pub definition: f64,
    pub closed_form: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RicciComparison {
    pub vectors: Vec<RicciEntry>,
    pub max_discrepancy: f64,
}

impl RicciComparison {
    pub fn new(ctx: &CurvatureContext<'_>, omega: &OneForm) -> Self {
        let def = ctx.ricci_definition_all(omega);
        let closed = ctx.ricci_closed_form_all(omega);
        let vectors: Vec<RicciEntry> = ctx
            .complex()
            .vectors()
            .iter()
            .zip(def.into_iter().zip(closed))
            .map(|(v, (definition, closed_form))| RicciEntry {
                vector: v.to_string(),
                definition,
                closed_form,
            })
            .collect();
        let max_discrepancy = vectors
            .iter()
            .fold(0.0, |m: f64, e| m.max((e.definition - e.closed_form).abs()));
        Self {
            vectors,
            max_discrepancy,
        }
    }
}

/// Per-cell Gauss and scalar curvatures with the Gauss–Bonnet totals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureReport {
    pub class: ComplexClass,
    pub chi: i64,
    pub vertices: Vec<CellCurvature>,
    pub faces: Vec<CellCurvature>,
    pub total_g_vertices: i64,
    pub total_g_faces: i64,
    /// `2χ` for graphs, `4χ` for closed surfaces.
    pub expected_total: i64,
    pub gauss_bonnet_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ricci: Option<RicciComparison>,
}

impl CurvatureReport {
    /// One row per vertex and face (`id,degree,g,S`), then the totals.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let rows = self.vertices.iter().chain(&self.faces);
        w.write_record(["id", "degree", "g", "S"])
            .expect("in-memory write");
        for r in rows {
            w.write_record([
                r.id.clone(),
                r.degree.to_string(),
                r.g.to_string(),
                r.s.to_string(),
            ])
            .expect("in-memory write");
        }
        let footer = [
            ("total_g_vertices", self.total_g_vertices.to_string()),
            ("total_g_faces", self.total_g_faces.to_string()),
            ("expected_total", self.expected_total.to_string()),
            ("chi", self.chi.to_string()),
            (
                "gauss_bonnet",
                if self.gauss_bonnet_ok { "pass" } else { "fail" }.to_owned(),
            ),
        ];
        for (name, value) in footer {
            w.write_record([name, "", &value, ""])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }
}

/// Checks `Σ g_v = 2χ` on a graph or `Σ g_v + Σ g_f = 4χ` on a quasiconvex
/// closed surface, in integer arithmetic.
pub fn gauss_bonnet(complex: &CellComplex) -> Result<CurvatureReport, CurvatureError> {
    let class = classify(complex)?;
    require_constant_weights(complex)?;
    if let Some(violation) = complex.quasiconvexity_violation() {
        return Err(CurvatureError::NotQuasiconvex(violation));
    }
    let entry = |cell: CellId, g: i64| {
        let degree = complex.degree(cell).expect("vertex or face");
        CellCurvature {
            id: cell.to_string(),
            degree,
            g,
            s: degree as i64 * g,
        }
    };
    let vertices: Vec<CellCurvature> = complex
        .cells_of_dim(0)
        .map(|v| Ok(entry(v, gauss_curvature_vertex(complex, v)?)))
        .collect::<Result<_, CurvatureError>>()?;
    let faces: Vec<CellCurvature> = match class {
        ComplexClass::Graph => Vec::new(),
        ComplexClass::ClosedSurface => complex
            .cells_of_dim(2)
            .map(|f| Ok(entry(f, gauss_curvature_face(complex, f)?)))
            .collect::<Result<_, CurvatureError>>()?,
    };
    let total_g_vertices = vertices.iter().map(|c| c.g).sum();
    let total_g_faces = faces.iter().map(|c| c.g).sum();
    let chi = complex.euler_characteristic();
    let expected_total = match class {
        ComplexClass::Graph => 2 * chi,
        ComplexClass::ClosedSurface => 4 * chi,
    };
    Ok(CurvatureReport {
        class,
        chi,
        vertices,
        faces,
        total_g_vertices,
        total_g_faces,
        expected_total,
        gauss_bonnet_ok: total_g_vertices + total_g_faces == expected_total,
        ricci: None,
    })
}
