//! Gradient, divergence and Green's identity on a weighted octahedron.

use cellform::calculus;
use cellform::generators;
use cellform::random::{self, seeded};

fn main() {
    let mut rng = seeded(5);
    let oct = random::reweighted(&generators::octahedron(), &mut rng);
    let f = random::function(&oct, &mut rng);
    let x = random::vector_field(&oct, &mut rng);

    let green = calculus::green_check(&oct, &f, &x);
    println!("int <grad f, X> = {:.15}", green.lhs);
    println!("int f div X     = {:.15}", green.rhs);
    println!("relative residual {:.3e}", green.residual() / green.scale);
    println!(
        "int div X  = {:.3e}",
        calculus::integrate(&calculus::div(&oct, &x))
    );
    println!(
        "int lap f  = {:.3e}",
        calculus::integrate(&calculus::laplacian_of_function(&oct, &f))
    );

    let df = calculus::derivative_of_function(&oct, &f);
    println!("d(df) closed: {}", calculus::is_closed(&oct, &df));
    let constant = calculus::CellFunction::constant(&oct, 2.0);
    println!(
        "constant function locally constant: {}",
        calculus::is_locally_constant(&oct, &constant)
    );
}
