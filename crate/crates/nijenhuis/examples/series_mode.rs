//! Truncated power series mode: exponentials, the non-polynomial solution
//! family of the 3D PDE, and how the truncation order is part of the ring.

use nijenhuis::forms::{cor1_parameters, dim3_cor1_form, Sign};
use nijenhuis::ring::{rat, ratio, Elem, Mode};
use nijenhuis::verify::{check_nijenhuis, check_pde_thm4, check_unity};

fn main() {
    // exp is only available in series rings, where it is exact order by order
    let order = 8;
    let x = Elem::var(1, Mode::Series(order), 0);
    let e = x.series_exp().unwrap();
    println!("exp(x) mod x^{} = {}", order + 1, e.render(&["x".into()]));
    let prod = &e * &x.neg().series_exp().unwrap();
    println!("exp(x)*exp(-x) == 1: {}", prod == Elem::one(1, Mode::Series(order)));

    // g = F(x2*exp(-x3/k)) * exp((k-1)x3/k) solves the PDE with f = 1 for
    // any univariate F; residuals vanish identically up to the truncation
    let two_vars: Vec<String> = vec!["x2".into(), "x3".into()];
    for fp in [Elem::one(1, Mode::Poly), Elem::var(1, Mode::Poly, 0)] {
        let (f, g) = cor1_parameters(2, &fp, order).unwrap();
        println!(
            "\nF = {}:  g = {}",
            fp.render(&["z".into()]),
            g.render(&two_vars)
        );
        println!("  pde: {}", check_pde_thm4(&f, &g, 2).unwrap().verdict());
    }

    // the assembled operator verifies in the series ring like any other
    let form = dim3_cor1_form(2, &ratio(1, 2), Sign::Minus, &Elem::var(1, Mode::Poly, 0), order)
        .unwrap();
    println!(
        "\n{}: nijenhuis {}, unity {}",
        form.name,
        check_nijenhuis(&form.l).verdict(),
        check_unity(&form.l, &form.e).verdict(),
    );

    // a coarser truncation is a different ring; verdicts are per-order
    let coarse = dim3_cor1_form(2, &rat(0), Sign::Minus, &Elem::var(1, Mode::Poly, 0), 3).unwrap();
    println!("same family at order 3: nijenhuis {}", check_nijenhuis(&coarse.l).verdict());
}
