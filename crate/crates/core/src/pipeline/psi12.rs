//! A 2ⁿ-compatible alternating product: a 2-compatible base case followed
//! by one symmetrization step per basis index of `F₁`.

use num_bigint::BigInt;

use crate::arith::RingElement;
use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::lift::{r1_factor, solve_post, solve_pre, ColumnSolver};
use crate::modules::vector::{self, Vector};
use crate::modules::basis::is_alternating;
use crate::modules::{comultiplication, DividedSquareBasis, Matrix};
use crate::pipeline::{ensure, CompatiblePsi1, PairingSet};
use crate::verify;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Psi1Zero {
    /// `ψ₁′` with `d₂ψ₁′ = d₁⊗1 − 1⊗d₁`, `r₂ × r₁²`.
    pub psi1_prime: Matrix,
    /// `ρ₁: F₁⊗F₂⊗F₂ → F₄`, `1 × r₁r₂²`.
    pub rho1: Matrix,
    /// `ρ₂: F₁⊗F₁⊗F₁ → F₄` with `ρ₂∘(1⊗d₂⊗d₂) = ρ₁`.
    pub rho2: Matrix,
    /// `ρ₃: T₂F₁ → F₃` with `ψ₃(z⊗ρ₃(x⊗y)) = ρ₂(x⊗y⊗z)`.
    pub rho3: Matrix,
    pub result: CompatiblePsi1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaR {
    /// `β: D₂F₁⊗F₁ → F₄`, `1 × |D₂F₁|·r₁`, index `θ·r₁ + z`.
    pub beta: Matrix,
    /// `r: D₂F₁ → F₄`, `1 × |D₂F₁|`.
    pub r: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionStep {
    pub vanishing_before: Vec<usize>,
    pub h: usize,
    pub beta_r: BetaR,
    /// `Y: T₂F₁ → F₃`, `r₃ × r₁²`.
    pub y: Matrix,
    pub result: CompatiblePsi1,
}

fn integer(f: &FreeComplex, n: &BigInt) -> RingElement {
    RingElement::from_integer(f.ring(), n.clone())
}

/// The next basis index to symmetrize: first an index with `d₁(e_i)`
/// regular, afterwards the least unused index.
pub fn choose_h1(f: &FreeComplex, used: &[usize]) -> Result<usize> {
    let r1 = f.rank(1);
    if used.is_empty() {
        return (0..r1).find(|&i| f.d(1).get(0, i).is_regular()).ok_or_else(|| {
            Error::hypothesis("positive grade of im d1", "no basis element of F1 has regular image under d1")
        });
    }
    (0..r1)
        .find(|i| !used.contains(i))
        .ok_or_else(|| Error::InvalidArgument("every basis index of F1 is already used".into()))
}

/// `χ: D₂F₁ → F₃` with `d₃χ = ψ₁∘comult`, zero on `D₂` of the span of
/// `vanishing`.
pub fn chi_lift(f: &FreeComplex, psi1: &Matrix, vanishing: &[usize]) -> Result<Matrix> {
    let ring = f.ring();
    let r1 = f.rank(1);
    let db = DividedSquareBasis::new(r1);
    let target = psi1.try_mul(&comultiplication(ring, r1))?;
    let mut free_cols = Vec::new();
    for (k, &(i, j)) in db.pairs().iter().enumerate() {
        if vanishing.contains(&i) && vanishing.contains(&j) {
            if !vector::is_zero(&target.column(k)) {
                return Err(Error::internal(
                    "chi vanishing",
                    format!("psi1 is not alternating on {}", db.symbol(k)),
                ));
            }
        } else {
            free_cols.push(k);
        }
    }
    let mut chi = Matrix::zeros(ring, f.rank(3), db.len());
    if free_cols.is_empty() {
        return Ok(chi);
    }
    let rhs = target.submatrix(&(0..target.rows()).collect::<Vec<_>>(), &free_cols);
    let sol = ColumnSolver::new(f.d(3)).solve(&rhs, "chi with d3∘chi = psi1∘comult")?;
    for (c, &k) in free_cols.iter().enumerate() {
        chi.set_column(k, &sol.column(c));
    }
    Ok(chi)
}

/// The 2-compatible base case `ψ₁⁽⁰⁾ = 2ψ₁′ + d₃ρ₃`.
pub fn build_psi1_zero(f: &FreeComplex, p: &PairingSet) -> Result<Psi1Zero> {
    let ring = f.ring();
    let [_, r1, r2, r3, _] = f.ranks();
    let (d1, d2, d3) = (f.d(1), f.d(2), f.d(3));
    let id = |k: usize| Matrix::identity(ring, f.rank(k));

    let b = &d1.kron(&id(1)) - &id(1).kron(d1);
    let psi1_prime = solve_post(d2, &b, "psi1' with d2∘psi1' = d1⊗1 − 1⊗d1")?;

    // q[c][a·r₂+b] = ψ₄(ψ₁′(e_a⊗d₂f_b)·f_c)
    let q = &p.phi2 * &(&psi1_prime * &id(1).kron(d2));
    let rho1 = Matrix::from_fn(ring, 1, r1 * r2 * r2, |_, k| {
        let (a, b, c) = (k / (r2 * r2), (k / r2) % r2, k % r2);
        let t = q.get(c, a * r2 + b) + q.get(b, a * r2 + c);
        &t - &(d1.get(0, a) * p.phi2.get(c, b))
    });
    for a in 0..r1 {
        for b in 0..r2 {
            for c in 0..r2 {
                if rho1.get(0, (a * r2 + b) * r2 + c) != rho1.get(0, (a * r2 + c) * r2 + b) {
                    return Err(Error::internal("rho1 symmetry", format!("slots 2 and 3 differ at e{}⊗f{}⊗f{}", a + 1, b + 1, c + 1)));
                }
            }
        }
    }
    if !(&rho1 * &id(1).kron(&d3.kron(&id(2)))).is_zero() || !(&rho1 * &id(1).kron(&id(2).kron(d3))).is_zero() {
        return Err(Error::internal("rho1 vanishing", "rho1 does not vanish on the image of d3"));
    }
    let rho2 = solve_pre(&id(1).kron(&d2.kron(d2)), &rho1, "rho2 with rho2∘(1⊗d2⊗d2) = rho1")?;
    let rho3_cols: Vec<Vector> = (0..r1 * r1)
        .map(|k| {
            let ell: Vector = (0..r1).map(|z| rho2.get(0, k * r1 + z).clone()).collect();
            p.represent_in_f3(&ell)
        })
        .collect();
    let rho3 = Matrix::from_columns(ring, r3, &rho3_cols);
    let psi1 = &psi1_prime.scale_i64(2) + &(d3 * &rho3);
    let n = BigInt::from(2);
    ensure(verify::check_compatibility(f, &p.psi4, &psi1, &n), "psi1_zero is 2-compatible")?;
    let chi = chi_lift(f, &psi1, &[])?;
    Ok(Psi1Zero { psi1_prime, rho1, rho2, rho3, result: CompatiblePsi1 { psi1, n, chi, vanishing: Vec::new() } })
}

/// Evaluation helpers for one compatible product and its `β`, `r`.
struct Eval<'a> {
    f: &'a FreeComplex,
    p: &'a PairingSet,
    c: &'a CompatiblePsi1,
    n: RingElement,
}

impl Eval<'_> {
    fn r1(&self) -> usize {
        self.f.rank(1)
    }
    fn e1(&self, i: usize) -> Vector {
        vector::unit(self.f.ring(), self.r1(), i)
    }
    fn d1(&self, x: &[RingElement]) -> RingElement {
        vector::dot(self.f.ring(), &self.f.d(1).row(0), x)
    }
    fn psi1(&self, x: &[RingElement], y: &[RingElement]) -> Vector {
        self.c.psi1.apply(&vector::tensor(self.f.ring(), x, y))
    }
    fn chi(&self, theta: &[RingElement]) -> Vector {
        self.c.chi.apply(theta)
    }
    /// `Nψ₃(w⊗χ(θ))`
    fn n_psi3_chi(&self, w: &[RingElement], theta: &[RingElement]) -> RingElement {
        &self.n * &self.p.pair13(w, &self.chi(theta))
    }
    fn beta(&self, br: &BetaR, theta: &[RingElement], z: &[RingElement]) -> RingElement {
        vector::dot(self.f.ring(), &br.beta.row(0), &vector::tensor(self.f.ring(), theta, z))
    }
    fn r(&self, br: &BetaR, theta: &[RingElement]) -> RingElement {
        vector::dot(self.f.ring(), &br.r.row(0), theta)
    }
    /// Basis vectors and sums of two distinct basis vectors of the span of
    /// `idx`.
    fn samples(&self, idx: &[usize]) -> Vec<(String, Vector)> {
        let mut out: Vec<(String, Vector)> = idx.iter().map(|&i| (format!("e{}", i + 1), self.e1(i))).collect();
        for (s, &i) in idx.iter().enumerate() {
            for &j in &idx[s + 1..] {
                out.push((format!("e{}+e{}", i + 1, j + 1), vector::add(&self.e1(i), &self.e1(j))));
            }
        }
        out
    }
}

fn fail(check: &str, at: String) -> Error {
    Error::internal(check.to_string(), format!("fails at {at}"))
}

/// `β` and `r` for a compatible product, with their consequences re-checked
/// on basis samples. When the product carries a non-empty vanishing set,
/// `r` is also checked to vanish on it.
pub fn beta_and_r(f: &FreeComplex, p: &PairingSet, c: &CompatiblePsi1) -> Result<BetaR> {
    let ring = f.ring();
    let r1 = f.rank(1);
    let db = DividedSquareBasis::new(r1);
    let ev = Eval { f, p, c, n: integer(f, &c.n) };
    let cols: Vec<Vector> = (0..r1 * r1).map(|k| c.psi1.column(k)).collect();
    let psi1_col = |a: usize, z: usize| &cols[a * r1 + z];

    // B(θ⊗z⊗w), polarized from B(x^(2)⊗z⊗w) = ψ₄(ψ₁(x⊗z)·ψ₁(x⊗w)) + N d₁(z)ψ₃(w⊗χ(x^(2)))
    let big_b = Matrix::from_fn(ring, 1, db.len() * r1 * r1, |_, k| {
        let (theta, z, w) = (k / (r1 * r1), (k / r1) % r1, k % r1);
        let (a, b) = db.pairs()[theta];
        let quad = if a == b {
            p.pair22(psi1_col(a, z), psi1_col(a, w))
        } else {
            &p.pair22(psi1_col(a, z), psi1_col(b, w)) + &p.pair22(psi1_col(b, z), psi1_col(a, w))
        };
        let th = vector::unit(ring, db.len(), theta);
        &quad + &(f.d(1).get(0, z) * &ev.n_psi3_chi(&ev.e1(w), &th))
    });
    let beta = r1_factor(&big_b, f.d(1), f.d(2), "beta")?;
    let xi = Matrix::from_fn(ring, 1, db.len() * r1, |_, k| {
        let (theta, z) = (k / r1, k % r1);
        beta.get(0, k) + &ev.n_psi3_chi(&ev.e1(z), &vector::unit(ring, db.len(), theta))
    });
    let r = r1_factor(&xi, f.d(1), f.d(2), "r")?;
    let br = BetaR { beta, r };

    let all: Vec<usize> = (0..r1).collect();
    let two = RingElement::from_i64(ring, 2);
    for (xs, x) in ev.samples(&all) {
        let x2 = vector::divided_square(&x);
        // d₁(w)d₁(z)r(x^(2)) = ψ₄(ψ₁(x⊗z)·ψ₁(x⊗w)) + Nd₁(z)ψ₃(w⊗χ(x^(2))) + Nd₁(w)ψ₃(z⊗χ(x^(2)))
        for z in 0..r1 {
            for w in 0..r1 {
                let (ez, ew) = (ev.e1(z), ev.e1(w));
                let lhs = &(f.d(1).get(0, w) * f.d(1).get(0, z)) * &ev.r(&br, &x2);
                let rhs = &(&p.pair22(&ev.psi1(&x, &ez), &ev.psi1(&x, &ew)) + &(f.d(1).get(0, z) * &ev.n_psi3_chi(&ew, &x2)))
                    + &(f.d(1).get(0, w) * &ev.n_psi3_chi(&ez, &x2));
                if lhs != rhs {
                    return Err(fail("r determines the product of two psi1 values", format!("x={xs}, z=e{}, w=e{}", z + 1, w + 1)));
                }
            }
        }
        // d₁(x)r(x^(2)) = 2Nψ₃(x⊗χ(x^(2)))
        if &ev.d1(&x) * &ev.r(&br, &x2) != &two * &ev.n_psi3_chi(&x, &x2) {
            return Err(fail("d1(x) r(x^(2)) = 2N psi3(x⊗chi(x^(2)))", format!("x={xs}")));
        }
        for y in 0..r1 {
            let ey = ev.e1(y);
            let xy = vector::divided_product(&x, &ey);
            // β(yx⊗x) + β(x^(2)⊗y) = Nψ₃(x⊗χ(xy)) + Nψ₃(y⊗χ(x^(2)))
            let lhs = &ev.beta(&br, &xy, &x) + &ev.beta(&br, &x2, &ey);
            let rhs = &ev.n_psi3_chi(&x, &xy) + &ev.n_psi3_chi(&ey, &x2);
            if lhs != rhs {
                return Err(fail("beta mixed symmetry", format!("x={xs}, y=e{}", y + 1)));
            }
            // d₁(x)r(xy) + d₁(y)r(x^(2)) = 2N(ψ₃(x⊗χ(xy)) + ψ₃(y⊗χ(x^(2))))
            let lhs = &(&ev.d1(&x) * &ev.r(&br, &xy)) + &(&ev.d1(&ey) * &ev.r(&br, &x2));
            if lhs != &two * &rhs {
                return Err(fail("r mixed identity", format!("x={xs}, y=e{}", y + 1)));
            }
        }
    }
    // β(x^(2)⊗x) = Nψ₃(x⊗χ(x^(2))), cubic in x: also sample e_a − e_b and triples
    let mut cubic = ev.samples(&all);
    for a in 0..r1 {
        for b in a + 1..r1 {
            cubic.push((format!("e{}-e{}", a + 1, b + 1), vector::sub(&ev.e1(a), &ev.e1(b))));
            for c3 in b + 1..r1 {
                let v = vector::add(&vector::add(&ev.e1(a), &ev.e1(b)), &ev.e1(c3));
                cubic.push((format!("e{}+e{}+e{}", a + 1, b + 1, c3 + 1), v));
            }
        }
    }
    for (xs, x) in cubic {
        let x2 = vector::divided_square(&x);
        if ev.beta(&br, &x2, &x) != ev.n_psi3_chi(&x, &x2) {
            return Err(fail("beta(x^(2)⊗x) = N psi3(x⊗chi(x^(2)))", format!("x={xs}")));
        }
    }
    // on the vanishing set: r|D₂G = 0 and ψ₄(ψ₁(x⊗w)·ψ₁(x⊗z)) = 0
    for (xs, x) in ev.samples(&c.vanishing) {
        let x2 = vector::divided_square(&x);
        if !ev.r(&br, &x2).is_zero() {
            return Err(fail("r vanishes on the symmetrized span", format!("x={xs}")));
        }
        for z in 0..r1 {
            for w in 0..r1 {
                if !p.pair22(&ev.psi1(&x, &ev.e1(w)), &ev.psi1(&x, &ev.e1(z))).is_zero() {
                    return Err(fail(
                        "psi4(psi1(x⊗w)·psi1(x⊗z)) = 0 on the symmetrized span",
                        format!("x={xs}, z=e{}, w=e{}", z + 1, w + 1),
                    ));
                }
            }
        }
    }
    Ok(br)
}

/// One symmetrization step: from a product alternating on `G` to one
/// alternating on `G ∪ {h}`, with `N′ = 2N²`.
pub fn induction_step(f: &FreeComplex, p: &PairingSet, c: &CompatiblePsi1, h: usize) -> Result<InductionStep> {
    let ring = f.ring();
    let [_, r1, _, r3, _] = f.ranks();
    if c.vanishing.contains(&h) || h >= r1 {
        return Err(Error::InvalidArgument(format!("index {} cannot be added to the symmetrized set", h + 1)));
    }
    let db = DividedSquareBasis::new(r1);
    let br = beta_and_r(f, p, c)?;
    let ev = Eval { f, p, c, n: integer(f, &c.n) };
    let mut s: Vec<usize> = c.vanishing.clone();
    s.push(h);
    s.sort_unstable();

    let proj = |x: &[RingElement]| -> Vector {
        (0..r1).map(|k| if s.contains(&k) { x[k].clone() } else { RingElement::zero(ring) }).collect()
    };
    // ∫: e_k ↦ e_k·e_h (k ≠ h), e_h ↦ e_h^(2)
    let integral = |x: &[RingElement]| -> Vector {
        let mut out = vector::zero(ring, db.len());
        for k in 0..r1 {
            let idx = db.index(k, h);
            out[idx] = &out[idx] + &x[k];
        }
        out
    };
    let ip = |x: &[RingElement]| integral(&proj(x));
    let two_n = ev.n.scale_i64(2);

    // Y(e_h⊗z) is determined by its pairing with every e_a; Y(e_j⊗z) = 0 for j ≠ h
    let mut y = Matrix::zeros(ring, r3, r1 * r1);
    for k in 0..r1 {
        let z = ev.e1(k);
        let ell: Vector = (0..r1)
            .map(|a| {
                let x = ev.e1(a);
                let t1 = &two_n * &p.pair13(&x, &ev.chi(&ip(&z)));
                let t2 = &two_n * &p.pair13(&z, &ev.chi(&ip(&x)));
                let t3 = &two_n * &p.pair13(&proj(&z), &ev.chi(&ip(&x)));
                let t4 = &ev.d1(&proj(&z)) * &ev.r(&br, &ip(&x));
                let t5 = &ev.d1(&z) * &ev.r(&br, &ip(&x));
                &(&(&(&t1 - &t2) + &t3) - &t4) + &t5
            })
            .collect();
        y.set_column(h * r1 + k, &p.represent_in_f3(&ell));
    }

    // 2Nψ₃(y⊗χ(∫y)) = d₁(y)r(∫y) for y in the span of G ∪ {h}
    for (xs, x) in ev.samples(&s) {
        if &two_n * &p.pair13(&x, &ev.chi(&integral(&x))) != &ev.d1(&x) * &ev.r(&br, &integral(&x)) {
            return Err(fail("2N psi3(y⊗chi(∫y)) = d1(y) r(∫y)", format!("y={xs}")));
        }
    }

    let psi1 = &c.psi1.scale(&two_n) - &(f.d(3) * &y);
    let n = BigInt::from(2) * &c.n * &c.n;
    ensure(verify::check_compatibility(f, &p.psi4, &psi1, &n), "symmetrized product is compatible")?;
    let sym = &psi1 * &comultiplication(ring, r1);
    for (k, &(i, j)) in db.pairs().iter().enumerate() {
        if s.contains(&i) && s.contains(&j) && !vector::is_zero(&sym.column(k)) {
            return Err(fail("symmetrized product vanishes on the enlarged span", db.symbol(k)));
        }
    }
    let chi = chi_lift(f, &psi1, &s)?;
    Ok(InductionStep {
        vanishing_before: c.vanishing.clone(),
        h,
        beta_r: br,
        y,
        result: CompatiblePsi1 { psi1, n, chi, vanishing: s },
    })
}

/// Base case followed by `rank F₁` symmetrization steps.
pub fn build_psi12(f: &FreeComplex, p: &PairingSet) -> Result<(CompatiblePsi1, Vec<InductionStep>, Psi1Zero)> {
    let zero = build_psi1_zero(f, p)?;
    let mut current = zero.result.clone();
    let mut steps = Vec::new();
    log::info!("base case: N = {}", current.n);
    while current.vanishing.len() < f.rank(1) {
        let h = choose_h1(f, &current.vanishing)?;
        let step = induction_step(f, p, &current, h)?;
        log::info!("symmetrized e{}: N = {}", h + 1, step.result.n);
        current = step.result.clone();
        steps.push(step);
    }
    if !is_alternating(&current.psi1, f.rank(1)) {
        return Err(Error::internal("psi12 alternating", "final product is not alternating"));
    }
    Ok((current, steps, zero))
}
