//! The three-dimensional semi-normal form: its compatibility PDE, explicit
//! polynomial solutions, and gauge equivalence between parameter pairs.

use nijenhuis::forms::{dim3_cor2_form, dim3_thm4_form, Sign};
use nijenhuis::ring::{rat, ratio, Elem, Mode};
use nijenhuis::verify::{check_nijenhuis, check_pde_thm4, check_transform_3d, check_unity};

fn main() {
    // f and g live in the (x2, x3) plane; the operator in (x1, x2, x3)
    let x2 = Elem::var(2, Mode::Poly, 0);
    let x3 = Elem::var(2, Mode::Poly, 1);
    let two_vars: Vec<String> = vec!["x2".into(), "x3".into()];

    // the torsion of the assembled operator vanishes exactly when (f, g)
    // solves the PDE — try one solution and one non-solution
    for (label, f, g, k) in [
        ("f = 1, g = x2, k = 2", Elem::one(2, Mode::Poly), x2.clone(), 2u32),
        ("f = x2, g = x3, k = 2", x2.clone(), x3.clone(), 2),
    ] {
        let pde = check_pde_thm4(&f, &g, k).unwrap();
        let form = dim3_thm4_form(k, &rat(0), Sign::Plus, &f, &g).unwrap();
        println!(
            "{label}: pde {}, nijenhuis {}, unity {}",
            pde.verdict(),
            check_nijenhuis(&form.l).verdict(),
            check_unity(&form.l, &form.e).verdict(),
        );
        for (at, v) in &pde.residuals {
            println!("  residual {} = {}", at, v.render(&two_vars));
        }
    }

    // the closed-form polynomial family
    let cor2 = dim3_cor2_form(3, &ratio(1, 2), Sign::Minus).unwrap();
    println!("{}: nijenhuis {}", cor2.name, check_nijenhuis(&cor2.l).verdict());

    // gauge equivalence: transporting (f, g) along x3 -> h(x2, x3)
    // with h = x3 + x2, f = 1, g = x2:
    //   gbar(x2, h) = g * h_3        => gbar = x2
    //   fbar(x2, h) = x2/2 * h_2 + f * h_3 => fbar = x2/2 + 1
    let f = Elem::one(2, Mode::Poly);
    let g = x2.clone();
    let h = &x3 + &x2;
    let fbar = x2.scale(&ratio(1, 2)) + Elem::one(2, Mode::Poly);
    let gbar = x2.clone();
    let rep = check_transform_3d(&f, &g, &fbar, &gbar, &h, 2).unwrap();
    println!("gauge h = x3 + x2 transports (f, g) to (fbar, gbar): {}", rep.verdict());
}
