//! Constructors for the normal and semi-normal forms of Nijenhuis operators
//! with a unity, together with their unity fields.
//!
//! Every constructor returns a [`BuiltForm`] carrying the operator, the
//! unity candidate, and the canonical variable names, so the output can be
//! fed directly to the checkers or serialized as a model.

use num_traits::Zero;
use thiserror::Error;

use crate::ring::{ratio, Elem, Mode, Rat, RingError};
use crate::tensor::{OperatorField, VectorField};

#[derive(Debug, Error)]
pub enum FormError {
    #[error("invalid form parameter: {0}")]
    BadParam(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Two-valued sign parameter of the dimension-2/3 families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn rat(self) -> Rat {
        match self {
            Sign::Plus => Rat::from_integer(1.into()),
            Sign::Minus => Rat::from_integer((-1).into()),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = String;
    fn from_str(s: &str) -> Result<Sign, String> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            other => Err(format!("unknown sign `{other}` (use + or -)")),
        }
    }
}

/// A constructed (L, e) pair with its coordinate names.
#[derive(Debug, Clone)]
pub struct BuiltForm {
    pub name: String,
    pub vars: Vec<String>,
    pub l: OperatorField,
    pub e: VectorField,
}

fn u_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("u{i}")).collect()
}

fn x_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn xy_names(s: usize) -> Vec<String> {
    let mut v = Vec::with_capacity(2 * s);
    for p in 1..=s {
        v.push(format!("x{p}"));
        v.push(format!("y{p}"));
    }
    v
}

fn d_dx1(n: usize, mode: Mode) -> VectorField {
    let mut comps = vec![Elem::one(n, mode)];
    comps.extend((1..n).map(|_| Elem::zero(n, mode)));
    VectorField::new(comps).expect("coherent")
}

/// Jordan-block normal form with a unity: diagonal u¹+λ₀, subdiagonal 1,
/// first-column entries −(i−2)·uⁱ in rows i = 3..n; e = ∂/∂u¹.
pub fn jordan_unity_form(n: usize, lambda0: &Rat) -> Result<BuiltForm, FormError> {
    jordan_variant(n, lambda0, false)
}

/// Variant of the Jordan form with the last first-column entry flipped to
/// +(n−2)·uⁿ. Kept as a fixture: its torsion does not vanish for n ≥ 4.
pub fn jordan_unity_form_flipped(n: usize, lambda0: &Rat) -> Result<BuiltForm, FormError> {
    jordan_variant(n, lambda0, true)
}

fn jordan_variant(n: usize, lambda0: &Rat, flip_last: bool) -> Result<BuiltForm, FormError> {
    if n == 0 {
        return Err(FormError::BadParam("dimension must be at least 1".into()));
    }
    let mode = Mode::Poly;
    let diag = Elem::var(n, mode, 0) + Elem::constant(n, mode, lambda0.clone());
    let mut entries = vec![vec![Elem::zero(n, mode); n]; n];
    for i in 0..n {
        entries[i][i] = diag.clone();
        if i > 0 {
            entries[i][i - 1] = Elem::one(n, mode);
        }
        // rows 3..n (1-based): first column −(i−2)·u^i
        if i >= 2 {
            let coeff = -(Rat::from_integer((i as i64 - 1).into()));
            let mut c = Elem::var(n, mode, i).scale(&coeff);
            if flip_last && i == n - 1 {
                c = c.neg();
            }
            entries[i][0] = c;
        }
    }
    Ok(BuiltForm {
        name: if flip_last { format!("jordan-flipped n={n}") } else { format!("jordan n={n}") },
        vars: u_names(n),
        l: OperatorField::new(entries).expect("square"),
        e: d_dx1(n, mode),
    })
}

/// Lower-triangular Toeplitz normal form: first column
/// (u¹+λ₀, u²+1, u³, …, uⁿ), constant along diagonals; e = ∂/∂u¹.
pub fn toeplitz_form(n: usize, lambda0: &Rat) -> Result<BuiltForm, FormError> {
    if n == 0 {
        return Err(FormError::BadParam("dimension must be at least 1".into()));
    }
    let mode = Mode::Poly;
    // t[d] is the entry on subdiagonal d (d = i − j).
    let mut t = vec![Elem::var(n, mode, 0) + Elem::constant(n, mode, lambda0.clone())];
    if n > 1 {
        t.push(Elem::var(n, mode, 1) + Elem::one(n, mode));
    }
    for d in 2..n {
        t.push(Elem::var(n, mode, d));
    }
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i >= j { t[i - j].clone() } else { Elem::zero(n, mode) })
                .collect()
        })
        .collect();
    Ok(BuiltForm {
        name: format!("toeplitz n={n}"),
        vars: u_names(n),
        l: OperatorField::new(entries).expect("square"),
        e: d_dx1(n, mode),
    })
}

/// Companion form of a differentially non-degenerate operator: first column
/// (u¹,…,uⁿ), superdiagonal 1; e = (n, −(n−1)u¹, …, −u^{n−1}).
pub fn companion_dnd_form(n: usize) -> Result<BuiltForm, FormError> {
    if n == 0 {
        return Err(FormError::BadParam("dimension must be at least 1".into()));
    }
    let mode = Mode::Poly;
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j == 0 {
                        Elem::var(n, mode, i)
                    } else if j == i + 1 {
                        Elem::one(n, mode)
                    } else {
                        Elem::zero(n, mode)
                    }
                })
                .collect()
        })
        .collect();
    let mut comps = vec![Elem::int(n, mode, n as i64)];
    for i in 1..n {
        comps.push(Elem::var(n, mode, i - 1).scale(&Rat::from_integer((-((n - i) as i64)).into())));
    }
    Ok(BuiltForm {
        name: format!("companion n={n}"),
        vars: u_names(n),
        l: OperatorField::new(entries).expect("square"),
        e: VectorField::new(comps).expect("coherent"),
    })
}

// 2x2 building blocks of the complex families, placed at block position
// (bi, bj) of a 2s x 2s matrix.
struct BlockMatrix {
    s: usize,
    entries: Vec<Vec<Elem>>,
}

impl BlockMatrix {
    fn new(s: usize) -> BlockMatrix {
        let nv = 2 * s;
        BlockMatrix { s, entries: vec![vec![Elem::zero(nv, Mode::Poly); nv]; nv] }
    }

    /// Add C^p = [[x^p, −y^p], [y^p, x^p]] times `coeff` at block (bi, bj).
    /// Variables are ordered (x¹, y¹, …, xˢ, yˢ), so x^p is var 2(p−1) and
    /// y^p is var 2p−1.
    fn add_c(&mut self, bi: usize, bj: usize, p: usize, coeff: i64) {
        let nv = 2 * self.s;
        let x = Elem::var(nv, Mode::Poly, 2 * (p - 1)).scale(&Rat::from_integer(coeff.into()));
        let y = Elem::var(nv, Mode::Poly, 2 * p - 1).scale(&Rat::from_integer(coeff.into()));
        let (r, c) = (2 * bi, 2 * bj);
        self.entries[r][c] = &self.entries[r][c] + &x;
        self.entries[r][c + 1] = &self.entries[r][c + 1] - &y;
        self.entries[r + 1][c] = &self.entries[r + 1][c] + &y;
        self.entries[r + 1][c + 1] = &self.entries[r + 1][c + 1] + &x;
    }

    /// Add the constant block [[a, −b], [b, a]] at block (bi, bj).
    fn add_rot(&mut self, bi: usize, bj: usize, a: &Rat, b: &Rat) {
        let nv = 2 * self.s;
        let av = Elem::constant(nv, Mode::Poly, a.clone());
        let bv = Elem::constant(nv, Mode::Poly, b.clone());
        let (r, c) = (2 * bi, 2 * bj);
        self.entries[r][c] = &self.entries[r][c] + &av;
        self.entries[r][c + 1] = &self.entries[r][c + 1] - &bv;
        self.entries[r + 1][c] = &self.entries[r + 1][c] + &bv;
        self.entries[r + 1][c + 1] = &self.entries[r + 1][c + 1] + &av;
    }
}

/// Complex analogue of the Jordan form: block diagonal C¹+Λ₀, block
/// subdiagonal I, first block column −(p−2)·C^p for block rows p = 3..s;
/// e = ∂/∂x¹. Coordinates (x¹, y¹, …, xˢ, yˢ), dimension 2s.
pub fn complex_block_form(s: usize, a0: &Rat, b0: &Rat) -> Result<BuiltForm, FormError> {
    complex_guard(s, b0)?;
    let mut m = BlockMatrix::new(s);
    for p in 0..s {
        m.add_c(p, p, 1, 1);
        m.add_rot(p, p, a0, b0);
        if p > 0 {
            m.add_rot(p, p - 1, &Rat::from_integer(1.into()), &Rat::zero());
        }
        if p >= 2 {
            m.add_c(p, 0, p + 1, -(p as i64 - 1));
        }
    }
    Ok(BuiltForm {
        name: format!("complex-block s={s}"),
        vars: xy_names(s),
        l: OperatorField::new(m.entries).expect("square"),
        e: d_dx1(2 * s, Mode::Poly),
    })
}

/// Complex analogue of the Toeplitz form: block Toeplitz, lower triangular,
/// with first block column (C¹+Λ₀, C²+I, C³, …, Cˢ); e = ∂/∂x¹.
pub fn complex_toeplitz_form(s: usize, a0: &Rat, b0: &Rat) -> Result<BuiltForm, FormError> {
    complex_guard(s, b0)?;
    let mut m = BlockMatrix::new(s);
    for bi in 0..s {
        for bj in 0..=bi {
            let d = bi - bj; // block subdiagonal index; entry is T^{d+1}
            m.add_c(bi, bj, d + 1, 1);
            if d == 0 {
                m.add_rot(bi, bj, a0, b0);
            } else if d == 1 {
                m.add_rot(bi, bj, &Rat::from_integer(1.into()), &Rat::zero());
            }
        }
    }
    Ok(BuiltForm {
        name: format!("complex-toeplitz s={s}"),
        vars: xy_names(s),
        l: OperatorField::new(m.entries).expect("square"),
        e: d_dx1(2 * s, Mode::Poly),
    })
}

fn complex_guard(s: usize, b0: &Rat) -> Result<(), FormError> {
    if s == 0 {
        return Err(FormError::BadParam("block count must be at least 1".into()));
    }
    if b0.is_zero() {
        return Err(FormError::BadParam(
            "complex families need a nonzero imaginary part b0".into(),
        ));
    }
    Ok(())
}

fn dim2_base(lambda0: &Rat) -> (Elem, Elem, Elem) {
    let mode = Mode::Poly;
    let x = Elem::var(2, mode, 0);
    let y = Elem::var(2, mode, 1);
    let scalar = &x + &Elem::constant(2, mode, lambda0.clone());
    (x, y, scalar)
}

/// 2D case 1: L = (λ₀ + x)·Id, e = ∂/∂x.
pub fn dim2_case1(lambda0: &Rat) -> BuiltForm {
    let (_, _, scalar) = dim2_base(lambda0);
    let l = OperatorField::identity(2, 2, Mode::Poly).scale(&scalar);
    BuiltForm { name: "dim2-case1".into(), vars: vec!["x".into(), "y".into()], l, e: d_dx1(2, Mode::Poly) }
}

/// 2D case 2: L = λ₀·Id + [[x, −1/2], [2(y+d), x]], e = ∂/∂x.
pub fn dim2_case2(lambda0: &Rat, d: &Rat) -> BuiltForm {
    let (_, y, scalar) = dim2_base(lambda0);
    let mode = Mode::Poly;
    let l = OperatorField::new(vec![
        vec![scalar.clone(), Elem::constant(2, mode, -ratio(1, 2))],
        vec![(y + Elem::constant(2, mode, d.clone())).scale(&ratio(2, 1)), scalar.clone()],
    ])
    .expect("square");
    BuiltForm { name: "dim2-case2".into(), vars: vec!["x".into(), "y".into()], l, e: d_dx1(2, mode) }
}

/// 2D case 3: L = λ₀·Id + [[x, ∓(k/2)·y^{k−1}], [(2/k)·y, x]], e = ∂/∂x.
/// The ∓ entry is the negation of `sign`: `Sign::Minus` selects +(k/2)·y^{k−1}.
pub fn dim2_case3(lambda0: &Rat, k: u32, sign: Sign) -> Result<BuiltForm, FormError> {
    if k == 0 {
        return Err(FormError::BadParam("k must be a positive integer".into()));
    }
    let (_, y, scalar) = dim2_base(lambda0);
    let mode = Mode::Poly;
    let upper = y
        .pow(k - 1)
        .scale(&(ratio(i64::from(k), 2) * -sign.rat()));
    let lower = y.scale(&ratio(2, i64::from(k)));
    let l = OperatorField::new(vec![
        vec![scalar.clone(), upper],
        vec![lower, scalar.clone()],
    ])
    .expect("square");
    Ok(BuiltForm {
        name: format!("dim2-case3 k={k} sign={}", sign.as_str()),
        vars: vec!["x".into(), "y".into()],
        l,
        e: d_dx1(2, mode),
    })
}

/// 2D case 4: L = λ₀·Id + [[x, 0], [f(x,y), x]], e = ∂/∂x.
pub fn dim2_case4(lambda0: &Rat, f: &Elem) -> Result<BuiltForm, FormError> {
    if f.num_vars() != 2 {
        return Err(FormError::BadParam("f must be a function of (x, y)".into()));
    }
    let (_, _, scalar) = dim2_base(lambda0);
    let mode = f.mode();
    let scalar = match mode {
        Mode::Poly => scalar,
        Mode::Series(n) => scalar.to_series(n),
    };
    let l = OperatorField::new(vec![
        vec![scalar.clone(), Elem::zero(2, mode)],
        vec![f.clone(), scalar.clone()],
    ])
    .expect("square");
    BuiltForm { name: "dim2-case4".into(), vars: vec!["x".into(), "y".into()], l, e: d_dx1(2, mode) }
        .pipe_ok()
}

impl BuiltForm {
    fn pipe_ok(self) -> Result<BuiltForm, FormError> {
        Ok(self)
    }
}

/// Assemble the 3D semi-normal form from its functional parameters.
/// `f` and `g` live in the two-variable ring (x², x³); the result lives in
/// (x¹, x², x³):
///
/// ```text
/// L = | x¹+λ₀     0              0          |
///     | x²/k      ±(x²)^k+x¹+λ₀ 0          |
///     | f(x²,x³)  g(x²,x³)      ±(x²)^k+x¹+λ₀ |
/// ```
pub fn dim3_thm4_form(
    k: u32,
    lambda0: &Rat,
    sign: Sign,
    f: &Elem,
    g: &Elem,
) -> Result<BuiltForm, FormError> {
    if k == 0 {
        return Err(FormError::BadParam("k must be a positive integer".into()));
    }
    if f.num_vars() != 2 || g.num_vars() != 2 || f.mode() != g.mode() {
        return Err(FormError::BadParam("f and g must share a (x2, x3) ring".into()));
    }
    let mode = f.mode();
    let embed = |e: &Elem| e.map_vars(3, &[Some(1), Some(2)]).expect("total map");
    let x1 = Elem::var(3, mode, 0);
    let x2 = Elem::var(3, mode, 1);
    let lam = Elem::constant(3, mode, lambda0.clone());
    let top = &x1 + &lam;
    let rep = x2.pow(k).scale(&sign.rat()) + &x1 + &lam;
    let z = Elem::zero(3, mode);
    let l = OperatorField::new(vec![
        vec![top, z.clone(), z.clone()],
        vec![x2.scale(&ratio(1, i64::from(k))), rep.clone(), z.clone()],
        vec![embed(f), embed(g), rep.clone()],
    ])
    .expect("square");
    Ok(BuiltForm {
        name: format!("dim3-thm4 k={k} sign={}", sign.as_str()),
        vars: x_names(3),
        l,
        e: d_dx1(3, mode),
    })
}

/// The cor1 family in truncated series mode: f = 1 and
/// g = F(x²·e^{−x³/k})·e^{(k−1)x³/k}, with F a univariate polynomial and
/// `order` the series truncation order.
pub fn dim3_cor1_form(
    k: u32,
    lambda0: &Rat,
    sign: Sign,
    f_param: &Elem,
    order: u32,
) -> Result<BuiltForm, FormError> {
    if k == 0 {
        return Err(FormError::BadParam("k must be a positive integer".into()));
    }
    if f_param.num_vars() != 1 {
        return Err(FormError::BadParam("F must be univariate".into()));
    }
    let (f, g) = cor1_parameters(k, f_param, order)?;
    let mut built = dim3_thm4_form(k, lambda0, sign, &f, &g)?;
    built.name = format!("dim3-cor1 k={k} sign={} N={order}", sign.as_str());
    Ok(built)
}

/// The (f, g) pair of the cor1 family over the series ring in
/// (x², x³) at the given truncation order.
pub fn cor1_parameters(k: u32, f_param: &Elem, order: u32) -> Result<(Elem, Elem), FormError> {
    let mode = Mode::Series(order);
    let x2 = Elem::var(2, mode, 0);
    let x3 = Elem::var(2, mode, 1);
    let arg = &x2 * &x3.scale(&ratio(-1, i64::from(k))).series_exp()?;
    let fp = f_param.to_series(order);
    let composed = fp.compose(&[arg])?;
    let g = &composed * &x3.scale(&ratio(i64::from(k) - 1, i64::from(k))).series_exp()?;
    Ok((Elem::one(2, mode), g))
}

/// The cor2 family: f = (1−k)/k · x³, g = 1, in polynomial mode.
pub fn dim3_cor2_form(k: u32, lambda0: &Rat, sign: Sign) -> Result<BuiltForm, FormError> {
    if k == 0 {
        return Err(FormError::BadParam("k must be a positive integer".into()));
    }
    let mode = Mode::Poly;
    let f = Elem::var(2, mode, 1).scale(&ratio(1 - i64::from(k), i64::from(k)));
    let g = Elem::one(2, mode);
    let mut built = dim3_thm4_form(k, lambda0, sign, &f, &g)?;
    built.name = format!("dim3-cor2 k={k} sign={}", sign.as_str());
    Ok(built)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;
    use crate::verify::{check_nijenhuis, check_pde_thm4, check_unity};

    fn zero_rat() -> Rat {
        Rat::zero()
    }

    fn passes_both(form: &BuiltForm) -> bool {
        check_nijenhuis(&form.l).pass() && check_unity(&form.l, &form.e).pass()
    }

    #[test]
    fn jordan_small_cases() {
        // n=2, lambda0=0: L = [[u1, 0], [1, u1]]
        let f = jordan_unity_form(2, &zero_rat()).unwrap();
        assert_eq!(*f.l.entry(0, 0), Elem::var(2, Mode::Poly, 0));
        assert_eq!(*f.l.entry(0, 1), Elem::zero(2, Mode::Poly));
        assert_eq!(*f.l.entry(1, 0), Elem::one(2, Mode::Poly));
        assert!(passes_both(&f));
        // n=1 degenerate
        let f1 = jordan_unity_form(1, &rat(3)).unwrap();
        assert_eq!(*f1.l.entry(0, 0), Elem::var(1, Mode::Poly, 0) + Elem::int(1, Mode::Poly, 3));
        assert!(passes_both(&f1));
    }

    #[test]
    fn jordan_regression() {
        for n in 1..=5 {
            let f = jordan_unity_form(n, &rat(1)).unwrap();
            assert!(passes_both(&f), "jordan n = {n}");
        }
    }

    #[test]
    fn flipped_variant_fails_nijenhuis() {
        // identical up to n=3, genuinely different (and broken) from n=4 on
        let good = jordan_unity_form(4, &zero_rat()).unwrap();
        let bad = jordan_unity_form_flipped(4, &zero_rat()).unwrap();
        assert!(check_nijenhuis(&good.l).pass());
        assert!(!check_nijenhuis(&bad.l).pass());
    }

    #[test]
    fn toeplitz_regression() {
        for n in 1..=5 {
            let f = toeplitz_form(n, &rat(-2)).unwrap();
            assert!(passes_both(&f), "toeplitz n = {n}");
        }
        // n=2 explicit: [[u1+l, 0], [u2+1, u1+l]]
        let f = toeplitz_form(2, &zero_rat()).unwrap();
        assert_eq!(*f.l.entry(1, 0), Elem::var(2, Mode::Poly, 1) + Elem::one(2, Mode::Poly));
    }

    #[test]
    fn companion_regression() {
        for n in 1..=5 {
            let f = companion_dnd_form(n).unwrap();
            assert!(passes_both(&f), "companion n = {n}");
        }
        let f = companion_dnd_form(3).unwrap();
        assert_eq!(f.e.components[0], Elem::int(3, Mode::Poly, 3));
        assert_eq!(f.e.components[1], Elem::var(3, Mode::Poly, 0).scale(&rat(-2)));
        assert_eq!(f.e.components[2], Elem::var(3, Mode::Poly, 1).scale(&rat(-1)));
    }

    #[test]
    fn complex_families() {
        for s in 1..=2 {
            let f = complex_block_form(s, &zero_rat(), &rat(1)).unwrap();
            assert!(passes_both(&f), "complex block s = {s}");
            let t = complex_toeplitz_form(s, &rat(2), &rat(1)).unwrap();
            assert!(passes_both(&t), "complex toeplitz s = {s}");
        }
        let f3 = complex_block_form(3, &zero_rat(), &rat(1)).unwrap();
        assert!(passes_both(&f3), "complex block s = 3");
        assert!(matches!(
            complex_block_form(1, &zero_rat(), &zero_rat()),
            Err(FormError::BadParam(_))
        ));
    }

    #[test]
    fn dim2_cases() {
        assert!(passes_both(&dim2_case1(&rat(5))));
        let c2 = dim2_case2(&zero_rat(), &zero_rat());
        assert_eq!(*c2.l.entry(0, 1), Elem::constant(2, Mode::Poly, ratio(-1, 2)));
        assert_eq!(*c2.l.entry(1, 0), Elem::var(2, Mode::Poly, 1).scale(&rat(2)));
        assert!(passes_both(&c2));
        assert!(passes_both(&dim2_case2(&rat(1), &rat(-3))));
        for k in 1..=3 {
            for sign in [Sign::Plus, Sign::Minus] {
                let c3 = dim2_case3(&zero_rat(), k, sign).unwrap();
                assert!(passes_both(&c3), "case3 k={k} sign={}", sign.as_str());
            }
        }
        // k=1, sign -: upper-right entry is +1/2
        let c3 = dim2_case3(&zero_rat(), 1, Sign::Minus).unwrap();
        assert_eq!(*c3.l.entry(0, 1), Elem::constant(2, Mode::Poly, ratio(1, 2)));
        // case 4: torsion vanishes for any f, but e = d/dx is a unity only
        // when f does not involve x
        let fy = Elem::var(2, Mode::Poly, 1).pow(2);
        assert!(passes_both(&dim2_case4(&rat(1), &fy).unwrap()));
        assert!(passes_both(&dim2_case4(&zero_rat(), &Elem::zero(2, Mode::Poly)).unwrap()));
        let fxy = Elem::var(2, Mode::Poly, 0) * Elem::var(2, Mode::Poly, 1).pow(2);
        let c4 = dim2_case4(&rat(1), &fxy).unwrap();
        assert!(check_nijenhuis(&c4.l).pass());
        assert!(!check_unity(&c4.l, &c4.e).pass());
    }

    #[test]
    fn thm4_pde_controls_nijenhuis() {
        // cor2 data passes both.
        for k in 1..=3 {
            for sign in [Sign::Plus, Sign::Minus] {
                let form = dim3_cor2_form(k, &rat(1), sign).unwrap();
                assert!(passes_both(&form), "cor2 k={k}");
            }
        }
        // A PDE-violating pair breaks the torsion but not the unity.
        let f = Elem::zero(2, Mode::Poly);
        let g = Elem::var(2, Mode::Poly, 1);
        assert!(!check_pde_thm4(&f, &g, 2).unwrap().pass());
        let bad = dim3_thm4_form(2, &zero_rat(), Sign::Plus, &f, &g).unwrap();
        assert!(!check_nijenhuis(&bad.l).pass());
        assert!(check_unity(&bad.l, &bad.e).pass());
    }

    #[test]
    fn cor1_series_family() {
        for fp in [
            Elem::one(1, Mode::Poly),
            Elem::var(1, Mode::Poly, 0),
            Elem::one(1, Mode::Poly) + Elem::var(1, Mode::Poly, 0),
        ] {
            let form = dim3_cor1_form(2, &zero_rat(), Sign::Plus, &fp, 8).unwrap();
            assert!(passes_both(&form), "cor1 with F = {}", fp.render(&["z".to_string()]));
            let (f, g) = cor1_parameters(2, &fp, 8).unwrap();
            assert!(check_pde_thm4(&f, &g, 2).unwrap().pass());
        }
    }

    #[test]
    fn single_eigenvalue_char_poly() {
        // jordan and toeplitz both have chi_L = (t - (u1 + l0))^n: sigma_k =
        // binom(n,k) (-(u1+l0))^k.
        use crate::tensor::char_coefficients;
        let n = 4;
        for builder in [jordan_unity_form, toeplitz_form] {
            let f = builder(n, &rat(2)).unwrap();
            let sig = char_coefficients(&f.l);
            let root = Elem::var(n, Mode::Poly, 0) + Elem::int(n, Mode::Poly, 2);
            let binom = [4i64, 6, 4, 1];
            for (k, s) in sig.iter().enumerate() {
                let expect = root.pow(k as u32 + 1).scale(&rat(binom[k]))
                    .scale(&rat(if (k + 1) % 2 == 0 { 1 } else { -1 }));
                assert_eq!(*s, expect, "{} sigma_{}", f.name, k + 1);
            }
        }
    }
}
