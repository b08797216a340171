//! From an operator with a unity to a multiplication on vector fields: frame
//! relations, structure constants, the full axiom battery, and the
//! round-trip L = E ∘ (·).

use nijenhuis::fman::{
    check_fmanifold_axioms, check_frame_relations, frame_fields, multiplication_on_frame,
    operator_from_mult, structure_constants_3d, thm6_euler_field, FManifoldModel,
};
use nijenhuis::forms::{dim3_thm4_form, jordan_unity_form, Sign};
use nijenhuis::ring::{rat, ratio, Elem, Mode, Rat};
use nijenhuis::verify::check_nijenhuis;
use num_traits::Zero;

fn main() {
    // frame fields X_i = L^i e of the 3x3 form with a single eigenvalue
    let form = jordan_unity_form(3, &rat(0)).unwrap();
    let frame = frame_fields(&form.l, &form.e, 2);
    for (i, x) in frame.iter().enumerate() {
        let rendered: Vec<String> =
            x.components.iter().map(|c| c.render(&form.vars)).collect();
        println!("X_{i} = ({})", rendered.join(", "));
    }
    println!("frame relations: {}", check_frame_relations(&form.l, &form.e, 2).verdict());

    // the multiplication X_i ∘ X_j = X_{i+j} in coordinates
    let circ = multiplication_on_frame(&form.l, &form.e).unwrap();
    let model = FManifoldModel {
        circ: circ.clone(),
        e: form.e.clone(),
        euler: frame[1].clone(),
    };
    println!("axioms on the derived multiplication: {}", check_fmanifold_axioms(&model).verdict());
    let back = operator_from_mult(&circ, &frame[1]).unwrap();
    println!("E = X_1 recovers L: {}", back == form.l);

    // the explicit 3D family: f constant, h solving its PDE
    let k = 2u32;
    let f = Elem::one(2, Mode::Poly);
    let x2 = Elem::var(2, Mode::Poly, 0);
    let g = x2.scale(&ratio(3, 2)) - x2.scale(&rat(2)); // h = 3, sign = -
    let circ = structure_constants_3d(k, Sign::Minus, &f, &g).unwrap();
    let euler = thm6_euler_field(k, &Rat::zero(), &f);
    let model = FManifoldModel { circ: circ.clone(), e: circ.coordinate_field(0), euler: euler.clone() };
    let rep = check_fmanifold_axioms(&model);
    println!("\n3D family (k=2, f=1, h=3): axioms {}", rep.verdict());
    for note in &rep.notes {
        println!("  {note}");
    }
    let l = operator_from_mult(&circ, &euler).unwrap();
    let expect = dim3_thm4_form(k, &Rat::zero(), Sign::Minus, &f, &g).unwrap();
    println!("round-trip against the semi-normal form: {}", l == expect.l);
    println!("derived operator is Nijenhuis: {}", check_nijenhuis(&l).pass());
}
