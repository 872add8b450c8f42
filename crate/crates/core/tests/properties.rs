use proptest::prelude::*;
use rand::seq::SliceRandom;

use cellform::calculus;
use cellform::curvature::{self, CurvatureContext};
use cellform::forms::{Form, FormComplex};
use cellform::generators;
use cellform::io;
use cellform::random::{self, seeded};
use cellform::{CellComplex, Chain};

fn fixed_complexes() -> Vec<CellComplex> {
    vec![
        generators::cycle(5).unwrap(),
        generators::complete(4).unwrap(),
        generators::petersen(),
        generators::cube(),
        generators::octahedron(),
        generators::prism(6).unwrap(),
        generators::torus_grid(3, 4).unwrap(),
        generators::genus2(),
        generators::two_square_cylinder(),
    ]
}

fn random_graph((n, p, seed): (usize, f64, u64)) -> CellComplex {
    generators::random_graph(n, p, &mut seeded(seed)).unwrap()
}

/// A fixed complex, a random graph or a randomly flipped icosahedron.
fn complex() -> impl Strategy<Value = CellComplex> {
    prop_oneof![
        (0..fixed_complexes().len()).prop_map(|k| fixed_complexes().swap_remove(k)),
        (1usize..20, 0.05f64..0.6, any::<u64>()).prop_map(random_graph),
        (0usize..40, any::<u64>())
            .prop_map(|(flips, seed)| generators::flipped_icosahedron(flips, &mut seeded(seed))),
    ]
}

fn weighted(c: CellComplex, seed: u64, random_weights: bool) -> CellComplex {
    if random_weights {
        random::reweighted(&c, &mut seeded(seed))
    } else {
        c
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn boundary_squares_to_zero(c in complex()) {
        for p in 2..=c.dim() {
            let m = c.boundary_matrix(p - 1).unwrap() * c.boundary_matrix(p).unwrap();
            prop_assert!(m.iter().all(|&x| x == 0));
        }
        for cell in c.cells() {
            prop_assert!(c.boundary(&c.boundary(&Chain::cell(cell))).max_abs() == 0.0);
        }
    }

    #[test]
    fn closure_is_idempotent(c in complex()) {
        for cell in c.cells() {
            let once = c.closure(cell).unwrap();
            prop_assert!(once.contains(&cell));
            for &face in &once {
                prop_assert!(c.closure(face).unwrap().is_subset(&once));
            }
        }
    }

    #[test]
    fn relabeling_preserves_invariants(c in complex(), seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let perm: Vec<Vec<usize>> = c
            .counts()
            .into_iter()
            .map(|n| {
                let mut p: Vec<usize> = (0..n).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        let r = c.relabeled(&perm).unwrap();
        prop_assert_eq!(r.counts(), c.counts());
        prop_assert_eq!(r.euler_characteristic(), c.euler_characteristic());
        prop_assert_eq!(r.is_quasiconvex(), c.is_quasiconvex());
        prop_assert_eq!(cellform::homology::betti_numbers(&r), cellform::homology::betti_numbers(&c));
        if let (Ok(a), Ok(b)) = (curvature::gauss_bonnet(&c), curvature::gauss_bonnet(&r)) {
            prop_assert_eq!(a.total_g_vertices, b.total_g_vertices);
            prop_assert_eq!(a.total_g_faces, b.total_g_faces);
        }
    }

    #[test]
    fn codifferential_is_adjoint(c in complex(), seed in any::<u64>(), w in any::<bool>()) {
        let c = weighted(c, seed, w);
        let forms = FormComplex::new(&c);
        let mut rng = seeded(seed ^ 1);
        for d in 1..=forms.top() {
            let u = Form::new(forms.basis(d), random::values(forms.basis(d).len(), &mut rng).into()).unwrap();
            let v = Form::new(forms.basis(d - 1), random::values(forms.basis(d - 1).len(), &mut rng).into()).unwrap();
            let left = forms.inner(&forms.apply_dstar(&u).unwrap(), &v);
            let right = forms.inner(&u, &forms.apply_d(&v).unwrap());
            prop_assert!(close(left, right, 1e-12), "{} vs {}", left, right);
            let a = forms.dstar_op(d).unwrap().matrix;
            let b = forms.dstar_projected(d).unwrap().matrix;
            prop_assert!((a - b).amax() <= 1e-12);
        }
    }

    #[test]
    fn green_identity(c in complex(), seed in any::<u64>(), w in any::<bool>()) {
        let c = weighted(c, seed, w);
        let mut rng = seeded(seed ^ 2);
        let f = random::function(&c, &mut rng);
        let x = random::vector_field(&c, &mut rng);
        let g = calculus::green_check(&c, &f, &x);
        prop_assert!(g.residual() <= 1e-12 * g.scale);
        prop_assert!(calculus::integrate(&calculus::div(&c, &x)).abs() <= 1e-12 * g.scale);
    }

    #[test]
    fn derivative_pairs_with_gradient(c in complex(), seed in any::<u64>(), w in any::<bool>()) {
        let c = weighted(c, seed, w);
        let mut rng = seeded(seed ^ 3);
        let f = random::function(&c, &mut rng);
        let x = random::vector_field(&c, &mut rng);
        let lhs = calculus::pairing(&c, &calculus::derivative_of_function(&c, &f), &x);
        let rhs = calculus::vf_inner_product(&c, &x, &calculus::grad(&c, &f));
        for ((_, a), (_, b)) in lhs.iter().zip(rhs.iter()) {
            prop_assert!(close(a, b, 1e-13));
        }
    }

    #[test]
    fn orientation_flip_keeps_spectra_and_curvature(c in complex(), pick in any::<prop::sample::Index>()) {
        let cells: Vec<_> = c.cells().collect();
        let flipped = c.with_flipped_orientation(*pick.get(&cells)).unwrap();
        let (a, b) = (FormComplex::new(&c), FormComplex::new(&flipped));
        for d in 0..=a.top() {
            let (sa, sb) = (a.spectrum(d, 1e-8).unwrap(), b.spectrum(d, 1e-8).unwrap());
            for (x, y) in sa.eigenvalues.iter().zip(sb.eigenvalues.iter()) {
                prop_assert!(close(*x, *y, 1e-10));
            }
        }
        prop_assert_eq!(curvature::gauss_bonnet(&c).ok(), curvature::gauss_bonnet(&flipped).ok());
    }

    #[test]
    fn neighbor_counts(c in complex()) {
        prop_assume!(c.is_quasiconvex() && (c.dim() == 1 || c.is_closed_surface()));
        let ctx = CurvatureContext::new(&c).unwrap();
        for (k, v) in c.vectors().iter().enumerate() {
            let n = ctx.neighbors(k);
            let expected = match c.dim() {
                1 => c.degree(v.sigma).unwrap(),
                _ if v.sigma.dim == 0 => c.degree(v.sigma).unwrap() - 2,
                _ => c.degree(v.tau).unwrap() - 2,
            };
            prop_assert_eq!(n.zero_count(), expected);
            if c.dim() == 1 {
                prop_assert_eq!(n.two_count(), 0);
            } else {
                prop_assert_eq!(n.two_count(), 2);
            }
        }
    }

    #[test]
    fn gauss_bonnet_on_random_graphs(n in 1usize..40, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g = generators::random_graph(n, p, &mut seeded(seed)).unwrap();
        let report = curvature::gauss_bonnet(&g).unwrap();
        prop_assert!(report.gauss_bonnet_ok);
        prop_assert_eq!(report.total_g_vertices, 2 * g.euler_characteristic());
    }

    #[test]
    fn unit_form_traces_on_flipped_spheres(flips in 0usize..60, seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let s = generators::flipped_icosahedron(flips, &mut rng);
        let report = curvature::gauss_bonnet(&s).unwrap();
        prop_assert_eq!(report.total_g_vertices + report.total_g_faces, 8);
        let ctx = CurvatureContext::new(&s).unwrap();
        for v in s.cells_of_dim(0) {
            let omega = curvature::random_unit_form(&s, v, &mut rng).unwrap();
            let trace = curvature::unit_form_trace_check(&ctx, &omega, v).unwrap();
            prop_assert!((trace - curvature::gauss_curvature_vertex(&s, v).unwrap() as f64).abs() <= 1e-12);
        }
    }

    #[test]
    fn json_round_trip(c in complex(), seed in any::<u64>(), w in any::<bool>()) {
        let c = weighted(c, seed, w);
        let text = io::to_canonical_json(&io::ComplexDocument::from_complex(&c, None));
        let back = io::parse_complex_json(&text).unwrap();
        prop_assert_eq!(back.boundary_lists(), c.boundary_lists());
        prop_assert_eq!(back.weights(), c.weights());
        let omega = random::one_form(&c, &mut seeded(seed));
        let parsed = io::parse_one_form_json(&c, &io::one_form_to_json(&c, &omega).to_string()).unwrap();
        prop_assert_eq!(parsed, omega);
    }
}
