//! The two-dimensional picture: the four local forms at a singular point,
//! the determinant/trace criterion, and the discriminant of a cubic
//! characteristic polynomial.

use nijenhuis::forms::{dim2_case1, dim2_case2, dim2_case3, dim2_case4, Sign};
use nijenhuis::ring::{rat, ratio, Elem, Mode};
use nijenhuis::tensor::char_coefficients;
use nijenhuis::verify::{check_2d_criterion, check_nijenhuis, check_unity, cubic_discriminant};

fn main() {
    let forms = vec![
        dim2_case1(&rat(0)),
        dim2_case2(&rat(0), &ratio(1, 3)),
        dim2_case3(&rat(0), 3, Sign::Minus).unwrap(),
        dim2_case4(&rat(0), &Elem::var(2, Mode::Poly, 1).pow(2)).unwrap(),
    ];
    for form in &forms {
        println!(
            "{}: nijenhuis {}, unity {}, 2d criterion {}",
            form.name,
            check_nijenhuis(&form.l).verdict(),
            check_unity(&form.l, &form.e).verdict(),
            check_2d_criterion(&form.l).unwrap().verdict(),
        );
    }

    // the unity fails (although the torsion still vanishes) as soon as the
    // lower-left entry of case 4 depends on x
    let xf = Elem::var(2, Mode::Poly, 0) * Elem::var(2, Mode::Poly, 1);
    let bad = dim2_case4(&rat(0), &xf).unwrap();
    println!(
        "case 4 with f = x*y: nijenhuis {}, unity {}",
        check_nijenhuis(&bad.l).verdict(),
        check_unity(&bad.l, &bad.e).verdict(),
    );

    // discriminant of a cubic characteristic polynomial in terms of the
    // trace-recursion coefficients
    let names: Vec<String> = (1..=3).map(|i| format!("u{i}")).collect();
    let l = nijenhuis::forms::companion_dnd_form(3).unwrap().l;
    let sigma = char_coefficients(&l);
    let disc = cubic_discriminant(&sigma);
    println!("companion n=3 cubic discriminant:\n  D = {}", disc.render(&names));
}
