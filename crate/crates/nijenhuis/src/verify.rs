//! Identity checkers. Every check returns a [`Report`] whose verdict is
//! `pass` exactly when the list of residuals is empty; the residuals are the
//! actual nonzero ring elements obstructing the identity, not just flags.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{rat, ratio, Elem, Rat};
use crate::tensor::{
    char_coefficients, differential, dual_apply, lie_derivative_operator, nijenhuis_torsion,
    OperatorField, VectorField,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("check requires dimension {expected}, operator has dimension {got}")]
    Dimension { expected: usize, got: usize },
    #[error("partition {m1}+{m2} does not sum to dimension {n}")]
    BadPartition { m1: usize, m2: usize, n: usize },
    #[error("transform is degenerate: the derivative in the last variable vanishes at the origin")]
    DegenerateTransform,
    #[error("functions must live in a {expected}-variable ring, got {got}")]
    Arity { expected: usize, got: usize },
}

/// Outcome of one identity check.
#[derive(Debug, Clone)]
pub struct Report {
    pub check: String,
    pub residuals: Vec<(String, Elem)>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Report {
        Report { check: check.into(), residuals: Vec::new(), notes: Vec::new() }
    }

    pub fn pass(&self) -> bool {
        self.residuals.is_empty()
    }

    pub fn verdict(&self) -> &'static str {
        if self.pass() {
            "pass"
        } else {
            "fail"
        }
    }

    pub(crate) fn push(&mut self, path: impl Into<String>, residual: Elem) {
        if !residual.is_zero() {
            self.residuals.push((path.into(), residual));
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Absorb another report's residuals under a path prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for (path, r) in other.residuals {
            self.residuals.push((format!("{prefix}{path}"), r));
        }
        for n in other.notes {
            self.notes.push(format!("{prefix}{n}"));
        }
    }

    /// Serializable form with residuals rendered against variable names.
    pub fn to_doc(&self, names: &[String]) -> ReportDoc {
        ReportDoc {
            check: self.check.clone(),
            verdict: self.verdict().to_string(),
            residuals: self
                .residuals
                .iter()
                .map(|(at, e)| ResidualDoc { at: at.clone(), value: e.render(names) })
                .collect(),
            notes: self.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualDoc {
    pub at: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDoc {
    pub check: String,
    pub verdict: String,
    pub residuals: Vec<ResidualDoc>,
    pub notes: Vec<String>,
}

impl ReportDoc {
    pub fn render_text(&self) -> String {
        let mut s = format!("[{}] {}\n", self.verdict.to_uppercase(), self.check);
        for r in &self.residuals {
            s.push_str(&format!("  residual {} = {}\n", r.at, r.value));
        }
        for n in &self.notes {
            s.push_str(&format!("  note: {n}\n"));
        }
        s
    }
}

/// Pass iff the Nijenhuis torsion of L vanishes identically.
pub fn check_nijenhuis(l: &OperatorField) -> Report {
    let mut rep = Report::new("nijenhuis");
    let t = nijenhuis_torsion(l);
    for (i, j, k, e) in t.nonzero_components() {
        rep.push(format!("N^{}_({},{})", i + 1, j + 1, k + 1), e);
    }
    rep
}

/// Pass iff ℒ_e L = Id.
pub fn check_unity(l: &OperatorField, e: &VectorField) -> Report {
    let mut rep = Report::new("unity");
    let n = l.dim();
    let diff =
        lie_derivative_operator(e, l).sub(&OperatorField::identity(n, l.num_vars(), l.mode()));
    for i in 0..n {
        for j in 0..n {
            rep.push(format!("(Lie_e L - Id)^{}_{}", i + 1, j + 1), diff.entry(i, j).clone());
        }
    }
    rep
}

/// Pass iff e(tr L) = n and e(σ_k) = −(n−k+1)·σ_{k−1} for all k with σ₀ = 1.
pub fn check_trace_and_sigma(l: &OperatorField, e: &VectorField) -> Report {
    let mut rep = Report::new("trace-and-sigma");
    let n = l.dim();
    rep.push(
        "e(tr L) - n".to_string(),
        e.derive(&l.trace()) - Elem::int(l.num_vars(), l.mode(), n as i64),
    );
    let sigma = char_coefficients(l);
    let mut prev = Elem::one(l.num_vars(), l.mode());
    for (k, sk) in sigma.iter().enumerate() {
        let k1 = k + 1; // sigma index
        let coeff = rat((n - k1 + 1) as i64);
        let residual = e.derive(sk) + prev.scale(&coeff);
        rep.push(format!("e(sigma_{k1}) + {}*sigma_{}", n - k1 + 1, k1 - 1), residual);
        prev = sk.clone();
    }
    rep
}

/// Pass iff (L − λ·Id)^* dλ = 0.
pub fn check_eigen_invariant(l: &OperatorField, lambda: &Elem) -> Report {
    let mut rep = Report::new("eigen-invariant");
    let shifted = l.sub(&OperatorField::identity(l.dim(), l.num_vars(), l.mode()).scale(lambda));
    let pulled = dual_apply(&shifted, &differential(lambda));
    for (j, c) in pulled.components.iter().enumerate() {
        rep.push(format!("((L - lambda Id)* dlambda)_{}", j + 1), c.clone());
    }
    rep
}

/// Two-dimensional criterion: pass iff L^* d(det L) = (det L)·d(tr L).
pub fn check_2d_criterion(l: &OperatorField) -> Result<Report, VerifyError> {
    if l.dim() != 2 {
        return Err(VerifyError::Dimension { expected: 2, got: l.dim() });
    }
    let mut rep = Report::new("2d-criterion");
    let det = l.determinant();
    let tr = l.trace();
    let lhs = dual_apply(l, &differential(&det));
    let dtr = differential(&tr);
    for j in 0..2 {
        let residual = &lhs.components[j] - &(&det * &dtr.components[j]);
        rep.push(format!("(L* d det L - det L * d tr L)_{}", j + 1), residual);
    }
    Ok(rep)
}

/// Block-splitting check for a partition n = m1 + m2: off-diagonal blocks of
/// L vanish, each diagonal block and each part of e only involves its own
/// block variables, and both restricted pairs are Nijenhuis with a unity.
pub fn check_split(
    l: &OperatorField,
    e: &VectorField,
    m1: usize,
    m2: usize,
) -> Result<Report, VerifyError> {
    let n = l.dim();
    if m1 + m2 != n || m1 == 0 || m2 == 0 {
        return Err(VerifyError::BadPartition { m1, m2, n });
    }
    let mut rep = Report::new("split");
    let block_of = |idx: usize| usize::from(idx >= m1);
    // (a) off-diagonal blocks vanish
    for i in 0..n {
        for j in 0..n {
            if block_of(i) != block_of(j) {
                rep.push(format!("off-diagonal L^{}_{}", i + 1, j + 1), l.entry(i, j).clone());
            }
        }
    }
    // (b) diagonal blocks use only their own variables
    for i in 0..n {
        for j in 0..n {
            if block_of(i) != block_of(j) {
                continue;
            }
            for v in 0..n {
                if block_of(v) != block_of(i) && l.entry(i, j).uses_var(v) {
                    rep.push(
                        format!("L^{}_{} depends on foreign u{}", i + 1, j + 1, v + 1),
                        l.entry(i, j).clone(),
                    );
                }
            }
        }
    }
    // (c) e splits along the blocks
    for (i, c) in e.components.iter().enumerate() {
        for v in 0..n {
            if block_of(v) != block_of(i) && c.uses_var(v) {
                rep.push(format!("e^{} depends on foreign u{}", i + 1, v + 1), c.clone());
            }
        }
    }
    if !rep.pass() {
        return Ok(rep);
    }
    // (d) restricted pairs are Nijenhuis with a unity
    for (b, (lo, hi)) in [(0usize, (0, m1)), (1usize, (m1, n))] {
        let m = hi - lo;
        let map: Vec<Option<usize>> = (0..n)
            .map(|v| if (lo..hi).contains(&v) { Some(v - lo) } else { None })
            .collect();
        let entries: Vec<Vec<Elem>> = (lo..hi)
            .map(|i| {
                (lo..hi)
                    .map(|j| l.entry(i, j).map_vars(m, &map).expect("checked in (b)"))
                    .collect()
            })
            .collect();
        let lb = OperatorField::new(entries).expect("square by construction");
        let eb = VectorField::new(
            (lo..hi)
                .map(|i| e.components[i].map_vars(m, &map).expect("checked in (c)"))
                .collect(),
        )
        .expect("coherent by construction");
        rep.absorb(&format!("block{}:", b + 1), check_nijenhuis(&lb));
        rep.absorb(&format!("block{}:", b + 1), check_unity(&lb, &eb));
    }
    Ok(rep)
}

/// PDE of the three-dimensional semi-normal form. `f` and `g` live in a
/// two-variable ring (x2, x3):
/// (x²/k)·∂₂g + f·∂₃g − g·∂₃f = ((k−1)/k)·g.
pub fn check_pde_thm4(f: &Elem, g: &Elem, k: u32) -> Result<Report, VerifyError> {
    if f.num_vars() != 2 || g.num_vars() != 2 {
        return Err(VerifyError::Arity { expected: 2, got: f.num_vars().max(g.num_vars()) });
    }
    let mut rep = Report::new("pde-dim3");
    let x2 = Elem::var(2, f.mode(), 0);
    let lhs = x2.scale(&ratio(1, i64::from(k))) * pd(g, 0) + f * &pd(g, 1) - g * &pd(f, 1);
    let rhs = g.scale(&ratio(i64::from(k) - 1, i64::from(k)));
    rep.push("pde", lhs - rhs);
    Ok(rep)
}

/// Equivalence of two 2D semi-normal forms via the gauge h(x, y):
/// pass iff f̄(x, h) = ∂_y h · f. Requires ∂_y h ≠ 0 at the origin.
pub fn check_equiv_2d(f: &Elem, fbar: &Elem, h: &Elem) -> Result<Report, VerifyError> {
    degenerate_guard(h)?;
    let mut rep = Report::new("equiv-2d");
    if !h.constant_term().is_zero() {
        rep.note("h(0,0) != 0: gauge moves the origin");
    }
    let x = Elem::var(2, h.mode(), 0);
    let composed = fbar.compose(&[x, h.clone()]).expect("two images for two variables");
    rep.push("fbar(x,h) - h_y*f", composed - pd(h, 1) * f.clone());
    Ok(rep)
}

/// Equivalence of two 3D semi-normal forms via the gauge h(x², x³):
/// ḡ(x², h) = g·∂₃h and f̄(x², h) = (x²/k)·∂₂h + f·∂₃h.
pub fn check_transform_3d(
    f: &Elem,
    g: &Elem,
    fbar: &Elem,
    gbar: &Elem,
    h: &Elem,
    k: u32,
) -> Result<Report, VerifyError> {
    degenerate_guard(h)?;
    let mut rep = Report::new("transform-3d");
    if !h.constant_term().is_zero() {
        rep.note("h(0,0) != 0: gauge moves the origin");
    }
    let x2 = Elem::var(2, h.mode(), 0);
    let images = [x2.clone(), h.clone()];
    let gc = gbar.compose(&images).expect("two images for two variables");
    rep.push("gbar(x2,h) - g*h_3", gc - g * &pd(h, 1));
    let fc = fbar.compose(&images).expect("two images for two variables");
    let expect = x2.scale(&ratio(1, i64::from(k))) * pd(h, 0) + f * &pd(h, 1);
    rep.push("fbar(x2,h) - (x2/k*h_2 + f*h_3)", fc - expect);
    Ok(rep)
}

/// Discriminant of the depressed cubic obtained from the monic
/// χ(t) = t³ + σ₁t² + σ₂t + σ₃ by the shift t ↦ t − σ₁/3:
/// D = −4p³ − 27q² with p = σ₂ − σ₁²/3, q = 2σ₁³/27 − σ₁σ₂/3 + σ₃.
pub fn cubic_discriminant(sigma: &[Elem]) -> Elem {
    assert_eq!(sigma.len(), 3, "cubic discriminant needs exactly three coefficients");
    let (s1, s2, s3) = (&sigma[0], &sigma[1], &sigma[2]);
    let p = s2 - &s1.pow(2).scale(&ratio(1, 3));
    let q = s1.pow(3).scale(&ratio(2, 27)) - (s1 * s2).scale(&ratio(1, 3)) + s3.clone();
    p.pow(3).scale(&rat(-4)) - q.pow(2).scale(&rat(27))
}

fn degenerate_guard(h: &Elem) -> Result<(), VerifyError> {
    if h.num_vars() != 2 {
        return Err(VerifyError::Arity { expected: 2, got: h.num_vars() });
    }
    let origin = vec![Rat::zero(), Rat::zero()];
    let hy = pd(h, 1).evaluate(&origin).expect("two coordinates");
    if hy.is_zero() {
        return Err(VerifyError::DegenerateTransform);
    }
    Ok(())
}

fn pd(e: &Elem, v: usize) -> Elem {
    e.partial_derivative(v).expect("variable in range")
}
