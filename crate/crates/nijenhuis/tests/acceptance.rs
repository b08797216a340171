//! End-to-end acceptance suite. Each numbered criterion prints exactly one
//! PASS/FAIL line; the test fails if any criterion fails.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nijenhuis::fman::{
    check_fmanifold_axioms, check_frame_relations, operator_from_mult, structure_constants_3d,
    thm6_euler_field, check_pde_thm6, FManifoldModel,
};
use nijenhuis::forms::{
    companion_dnd_form, complex_block_form, complex_toeplitz_form, dim2_case1, dim2_case2,
    dim2_case3, dim2_case4, dim3_cor1_form, dim3_thm4_form, jordan_unity_form,
    jordan_unity_form_flipped, toeplitz_form, BuiltForm, Sign,
};
use nijenhuis::ring::{rat, ratio, Elem, Mode, Rat};
use nijenhuis::selftest::{charpoly_cofactor, direct_sum};
use nijenhuis::tensor::{char_coefficients, OperatorField, VectorField};
use nijenhuis::verify::{
    check_2d_criterion, check_nijenhuis, check_pde_thm4, check_split, check_trace_and_sigma,
    check_unity,
};

const SIGNS: [Sign; 2] = [Sign::Plus, Sign::Minus];

/// Every (L, e) fixture that is expected to verify cleanly.
fn verified_forms() -> Vec<BuiltForm> {
    let mut forms = Vec::new();
    for n in 1..=5 {
        forms.push(jordan_unity_form(n, &ratio(1, 2)).unwrap());
        forms.push(toeplitz_form(n, &rat(0)).unwrap());
        forms.push(companion_dnd_form(n).unwrap());
    }
    for s in 1..=2 {
        forms.push(complex_block_form(s, &rat(1), &rat(1)).unwrap());
        forms.push(complex_toeplitz_form(s, &rat(0), &rat(2)).unwrap());
    }
    forms.push(dim2_case1(&rat(1)));
    forms.push(dim2_case2(&rat(0), &ratio(1, 3)));
    for k in 1..=3 {
        for sign in SIGNS {
            forms.push(dim2_case3(&rat(0), k, sign).unwrap());
        }
    }
    forms.push(dim2_case4(&rat(0), &Elem::var(2, Mode::Poly, 1).pow(2)).unwrap());
    for (k, f, g) in pde_solutions() {
        for sign in SIGNS {
            forms.push(dim3_thm4_form(k, &rat(0), sign, &f, &g).unwrap());
        }
    }
    for fp in cor1_f_params() {
        forms.push(dim3_cor1_form(2, &rat(0), Sign::Minus, &fp, 8).unwrap());
        forms.push(dim3_cor1_form(3, &rat(1), Sign::Plus, &fp, 8).unwrap());
    }
    forms
}

/// Three polynomial (k, f, g) solutions of the 3D compatibility PDE, the
/// last one being the explicit closed-form family with f linear in x3.
fn pde_solutions() -> Vec<(u32, Elem, Elem)> {
    let x2 = Elem::var(2, Mode::Poly, 0);
    let x3 = Elem::var(2, Mode::Poly, 1);
    vec![
        // f = (1-k)/k * x3, g = 1
        (3, x3.scale(&ratio(-2, 3)), Elem::one(2, Mode::Poly)),
        // f = 1, g = x2 at k = 2
        (2, Elem::one(2, Mode::Poly), x2.clone()),
        // f = 0, g = x2^(k-1) * x3 at k = 3
        (3, Elem::zero(2, Mode::Poly), x2.pow(2) * x3),
    ]
}

fn cor1_f_params() -> Vec<Elem> {
    let z = Elem::var(1, Mode::Poly, 0);
    vec![Elem::one(1, Mode::Poly), z.clone(), Elem::one(1, Mode::Poly) + z]
}

fn criterion_1() -> Result<(), String> {
    for form in verified_forms() {
        let rep = check_nijenhuis(&form.l);
        if !rep.pass() {
            return Err(format!("{}: torsion residual at {}", form.name, rep.residuals[0].0));
        }
        let rep = check_unity(&form.l, &form.e);
        if !rep.pass() {
            return Err(format!("{}: unity residual at {}", form.name, rep.residuals[0].0));
        }
    }
    Ok(())
}

fn criterion_2() -> Result<(), String> {
    let mut satisfying: Vec<(u32, Elem, Elem)> = Vec::new();
    // the closed-form family with varying k, plus the fixed solutions
    for k in 1..=5 {
        let x3 = Elem::var(2, Mode::Poly, 1);
        satisfying.push((k, x3.scale(&ratio(1 - i64::from(k), i64::from(k))), Elem::one(2, Mode::Poly)));
        satisfying.push((k, Elem::zero(2, Mode::Poly), Elem::var(2, Mode::Poly, 0).pow(k - 1)));
    }
    assert!(satisfying.len() >= 10);
    let mut violating: Vec<(u32, Elem, Elem)> = Vec::new();
    for k in 1..=5 {
        let x2 = Elem::var(2, Mode::Poly, 0);
        let x3 = Elem::var(2, Mode::Poly, 1);
        violating.push((k, x3.clone(), x3.pow(2) + Elem::one(2, Mode::Poly)));
        violating.push((k, x2.clone(), x3.clone()));
    }
    let mut total = 0;
    for (expect_pde, set) in [(true, &satisfying), (false, &violating)] {
        for (k, f, g) in set {
            total += 1;
            let pde = check_pde_thm4(f, g, *k).map_err(|e| e.to_string())?.pass();
            if pde != expect_pde {
                return Err(format!("k={k}: PDE verdict {pde}, fixture expected {expect_pde}"));
            }
            for sign in SIGNS {
                let l = dim3_thm4_form(*k, &rat(0), sign, f, g).map_err(|e| e.to_string())?.l;
                let torsion = check_nijenhuis(&l).pass();
                if torsion != pde {
                    return Err(format!(
                        "k={k} sign={}: torsion verdict {torsion} != PDE verdict {pde}",
                        sign.as_str()
                    ));
                }
            }
        }
    }
    if total < 20 {
        return Err(format!("only {total} triples exercised"));
    }
    Ok(())
}

fn random_elem(rng: &mut ChaCha8Rng, num_vars: usize, max_terms: usize, max_deg: u32) -> Elem {
    let mut e = Elem::zero(num_vars, Mode::Poly);
    for _ in 0..rng.gen_range(0..=max_terms) {
        let c = rng.gen_range(-3i64..=3);
        if c == 0 {
            continue;
        }
        let mut mono = Elem::constant(num_vars, Mode::Poly, rat(c));
        for v in 0..num_vars {
            mono = mono * Elem::var(num_vars, Mode::Poly, v).pow(rng.gen_range(0..=max_deg));
        }
        e = e + mono;
    }
    e
}

fn criterion_3() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2d);
    let mut total = 0;
    let mut nontrivial_failures = 0;
    while total < 50 {
        let l = OperatorField::new(vec![
            vec![random_elem(&mut rng, 2, 2, 2), random_elem(&mut rng, 2, 2, 2)],
            vec![random_elem(&mut rng, 2, 2, 2), random_elem(&mut rng, 2, 2, 2)],
        ])
        .unwrap();
        if l.determinant().is_zero() {
            continue;
        }
        total += 1;
        let torsion = check_nijenhuis(&l).pass();
        let criterion = check_2d_criterion(&l).map_err(|e| e.to_string())?.pass();
        if torsion != criterion {
            return Err(format!("sample {total}: torsion {torsion} vs criterion {criterion}"));
        }
        if !torsion {
            nontrivial_failures += 1;
        }
    }
    if nontrivial_failures == 0 {
        return Err("sample space degenerate: no non-Nijenhuis operators drawn".into());
    }
    Ok(())
}

fn criterion_4() -> Result<(), String> {
    for form in verified_forms() {
        let rep = check_trace_and_sigma(&form.l, &form.e);
        if !rep.pass() {
            return Err(format!("{}: residual at {}", form.name, rep.residuals[0].0));
        }
    }
    Ok(())
}

fn criterion_5() -> Result<(), String> {
    for n in 2..=4 {
        for form in [companion_dnd_form(n).unwrap(), jordan_unity_form(n, &rat(0)).unwrap()] {
            let rep = check_frame_relations(&form.l, &form.e, n - 1);
            if !rep.pass() {
                return Err(format!("{}: residual at {}", form.name, rep.residuals[0].0));
            }
        }
    }
    Ok(())
}

fn criterion_6() -> Result<(), String> {
    for k in [2u32, 3] {
        for sign in SIGNS {
            for a in 0..=2i64 {
                for c in 0..=2i64 {
                    let f = Elem::int(2, Mode::Poly, a);
                    let h = Elem::var(2, Mode::Poly, 0).pow(k - 2).scale(&rat(c));
                    if !check_pde_thm6(&f, &h, k).pass() {
                        return Err(format!("PDE fails at k={k} a={a} c={c}"));
                    }
                    let x2 = Elem::var(2, Mode::Poly, 0);
                    let g = x2.scale(&ratio(1, i64::from(k))) * h
                        + x2.pow(k - 1).scale(&(sign.rat() * rat(i64::from(k) * a)));
                    let circ =
                        structure_constants_3d(k, sign, &f, &g).map_err(|e| e.to_string())?;
                    let euler = thm6_euler_field(k, &Rat::zero(), &f);
                    let model = FManifoldModel {
                        circ: circ.clone(),
                        e: circ.coordinate_field(0),
                        euler: euler.clone(),
                    };
                    let rep = check_fmanifold_axioms(&model);
                    if !rep.pass() {
                        return Err(format!(
                            "axioms fail at k={k} sign={} a={a} c={c}: {}",
                            sign.as_str(),
                            rep.residuals[0].0
                        ));
                    }
                    for sub in
                        ["commutativity", "associativity", "unity", "hertling-manin", "euler"]
                    {
                        if !rep.notes.iter().any(|n| n.starts_with(sub)) {
                            return Err(format!("sub-check {sub} did not run"));
                        }
                    }
                    let l = operator_from_mult(&circ, &euler).map_err(|e| e.to_string())?;
                    let expect = dim3_thm4_form(k, &Rat::zero(), sign, &f, &g)
                        .map_err(|e| e.to_string())?;
                    if l != expect.l {
                        return Err(format!(
                            "round-trip mismatch at k={k} sign={} a={a} c={c}",
                            sign.as_str()
                        ));
                    }
                    if !check_nijenhuis(&l).pass() {
                        return Err(format!("derived operator not Nijenhuis at k={k} a={a} c={c}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Result<(), String> {
    let builders: [(&str, fn(usize) -> BuiltForm); 3] = [
        ("jordan", |n| jordan_unity_form(n, &rat(0)).unwrap()),
        ("toeplitz", |n| toeplitz_form(n, &rat(1)).unwrap()),
        ("companion", |n| companion_dnd_form(n).unwrap()),
    ];
    for (an, a) in builders {
        for (bn, b) in builders {
            for (m1, m2) in [(2usize, 2usize), (2, 3)] {
                let fa = a(m1);
                let fb = b(m2);
                let (l, e) = direct_sum(&fa, &fb);
                let rep = check_split(&l, &e, m1, m2).map_err(|er| er.to_string())?;
                if !rep.pass() {
                    return Err(format!(
                        "{an}({m1})+{bn}({m2}): residual at {}",
                        rep.residuals[0].0
                    ));
                }
                // cross-block injection into L flips the verdict
                let n = m1 + m2;
                let foreign = Elem::var(n, Mode::Poly, m1);
                let mut rows: Vec<Vec<Elem>> =
                    (0..n).map(|i| (0..n).map(|j| l.entry(i, j).clone()).collect()).collect();
                rows[0][0] = &rows[0][0] + &foreign;
                let tampered = OperatorField::new(rows).unwrap();
                if check_split(&tampered, &e, m1, m2).map_err(|er| er.to_string())?.pass() {
                    return Err(format!("{an}({m1})+{bn}({m2}): L tampering not detected"));
                }
                // and into e
                let mut comps = e.components.clone();
                comps[0] = &comps[0] + &foreign;
                let te = VectorField::new(comps).unwrap();
                if check_split(&l, &te, m1, m2).map_err(|er| er.to_string())?.pass() {
                    return Err(format!("{an}({m1})+{bn}({m2}): e tampering not detected"));
                }
            }
        }
    }
    Ok(())
}

fn criterion_8() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x08);
    for sample in 0..50 {
        let n = rng.gen_range(1..=4);
        let max_deg = if n == 4 { 1 } else { 2 };
        let entries: Vec<Vec<Elem>> = (0..n)
            .map(|_| (0..n).map(|_| random_elem(&mut rng, n, 2, max_deg)).collect())
            .collect();
        let l = OperatorField::new(entries).unwrap();
        if char_coefficients(&l) != charpoly_cofactor(&l) {
            return Err(format!("characteristic-coefficient mismatch on sample {sample} (n={n})"));
        }
    }
    let x = Elem::var(1, Mode::Series(10), 0);
    let prod = x.series_exp().map_err(|e| e.to_string())?
        * x.neg().series_exp().map_err(|e| e.to_string())?;
    if prod != Elem::one(1, Mode::Series(10)) {
        return Err("exp(x)*exp(-x) != 1 at order 10".into());
    }
    // ring laws, three suites of 200 randomized cases each
    for _ in 0..200 {
        let a = random_elem(&mut rng, 2, 3, 2);
        let b = random_elem(&mut rng, 2, 3, 2);
        let c = random_elem(&mut rng, 2, 3, 2);
        if !(&(&a * &(&b + &c)) - &(&(&a * &b) + &(&a * &c))).is_zero() {
            return Err("distributivity violated".into());
        }
        if !(&(&(&a * &b) * &c) - &(&a * &(&b * &c))).is_zero() {
            return Err("multiplicative associativity violated".into());
        }
        if !(&(&a * &b) - &(&b * &a)).is_zero() {
            return Err("commutativity violated".into());
        }
    }
    for _ in 0..200 {
        let a = random_elem(&mut rng, 3, 3, 2);
        let b = random_elem(&mut rng, 3, 3, 2);
        // Leibniz rule for every variable
        for v in 0..3 {
            let lhs = (&a * &b).partial_derivative(v).map_err(|e| e.to_string())?;
            let rhs = a.partial_derivative(v).map_err(|e| e.to_string())? * b.clone()
                + a.clone() * b.partial_derivative(v).map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err(format!("Leibniz rule violated in variable {v}"));
            }
        }
    }
    for _ in 0..200 {
        let a = random_elem(&mut rng, 2, 3, 2);
        if !(&a - &a).is_zero() || !(&a + &a.neg()).is_zero() {
            return Err("additive inverse violated".into());
        }
        if a.pow(3) != &(&a * &a) * &a {
            return Err("pow/mul mismatch".into());
        }
    }
    Ok(())
}

fn criterion_9() -> Result<(), String> {
    let default = jordan_unity_form(4, &rat(0)).unwrap();
    let flipped = jordan_unity_form_flipped(4, &rat(0)).unwrap();
    let default_passes = check_nijenhuis(&default.l).pass();
    let flipped_passes = check_nijenhuis(&flipped.l).pass();
    match (default_passes, flipped_passes) {
        (true, false) => Ok(()),
        (a, b) => Err(format!("default passes={a}, flipped passes={b}; expected (true, false)")),
    }
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Result<(), String>); 9] = [
        ("1 form regression matrix", criterion_1),
        ("2 dim-3 PDE biconditional", criterion_2),
        ("3 2d criterion equivalence", criterion_3),
        ("4 sigma relations", criterion_4),
        ("5 frame lemma", criterion_5),
        ("6 dim-3 multiplication round-trip", criterion_6),
        ("7 splitting compositionality", criterion_7),
        ("8 oracle equivalences", criterion_8),
        ("9 sign-variant resolution", criterion_9),
    ];
    let mut failures = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(()) => println!("PASS criterion {name}"),
            Err(why) => {
                println!("FAIL criterion {name}: {why}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failing criteria: {failures:?}");
}
