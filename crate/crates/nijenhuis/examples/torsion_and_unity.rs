//! Build an operator field by hand, compute its torsion, and check the
//! unity condition — the two core identities everything else builds on.

use nijenhuis::ring::{Elem, Mode};
use nijenhuis::tensor::{nijenhuis_torsion, OperatorField, VectorField};
use nijenhuis::verify::{check_nijenhuis, check_unity};

fn main() {
    let names: Vec<String> = vec!["u1".into(), "u2".into()];
    let u1 = Elem::var(2, Mode::Poly, 0);
    let u2 = Elem::var(2, Mode::Poly, 1);

    // the 2x2 companion-style operator: first column (u1, u2), superdiagonal 1
    let l = OperatorField::new(vec![
        vec![u1.clone(), Elem::one(2, Mode::Poly)],
        vec![u2.clone(), Elem::zero(2, Mode::Poly)],
    ])
    .unwrap();
    let e = VectorField::new(vec![Elem::int(2, Mode::Poly, 2), u1.neg()]).unwrap();

    println!("L =");
    for row in l.rows() {
        let rendered: Vec<String> = row.iter().map(|x| x.render(&names)).collect();
        println!("  [{}]", rendered.join(", "));
    }

    let torsion = nijenhuis_torsion(&l);
    println!("torsion identically zero: {}", torsion.is_zero());
    println!("check_nijenhuis: {}", check_nijenhuis(&l).verdict());
    println!("check_unity:     {}", check_unity(&l, &e).verdict());

    // break the operator and show a residual
    let broken = OperatorField::new(vec![
        vec![u2.clone(), Elem::zero(2, Mode::Poly)],
        vec![Elem::zero(2, Mode::Poly), u1.clone()],
    ])
    .unwrap();
    let rep = check_nijenhuis(&broken);
    println!("\ndiag(u2, u1) is {}:", rep.verdict());
    for (at, value) in &rep.residuals {
        println!("  residual {} = {}", at, value.render(&names));
    }
}
