//! Truncated arithmetic in the unramified extension Z_q = Z_p[t]/(Q(t)) at a
//! fixed working precision W (digits base p), together with valuation-shift
//! tracking ([`ScaledZq`]) and the Frobenius substitution sigma.
//!
//! All operations reduce results modulo (p^W, Q). The precision W is chosen
//! by the planning layer; nothing in this module ever changes it.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::fp;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PadicError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    BadDegree,
    #[error("working precision must be at least 1")]
    BadPrecision,
    #[error("defining polynomial is not monic of degree n")]
    BadModulus,
    #[error("defining polynomial is reducible mod p")]
    ReducibleModulus,
    #[error("attempted to invert a non-unit (valuation >= 1)")]
    NonUnit,
}

/// Element of Z_q at the ambient precision: exactly `n` coefficients in
/// `[0, p^W)`, little-endian in the generator `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZqElem {
    pub c: Vec<BigUint>,
}

impl ZqElem {
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
}

/// `p^shift * mantissa`, canonical when the mantissa is a unit or zero.
///
/// The known absolute precision of the represented value is `shift + W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledZq {
    pub shift: i64,
    pub m: ZqElem,
}

impl ScaledZq {
    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    /// Valuation of the represented value, `None` for zero.
    pub fn valuation(&self, ctx: &ZqContext) -> Option<i64> {
        ctx.elem_valuation(&self.m).map(|v| self.shift + v as i64)
    }
}

/// The ring Z_p[t]/(Q(t)) truncated to precision p^W.
///
/// Immutable after construction; all operations are pure and the context can
/// be shared freely across threads.
#[derive(Debug, Clone)]
pub struct ZqContext {
    p: u64,
    n: usize,
    w: u32,
    p_big: BigUint,
    pw: BigUint,
    /// Monic modulus, length n+1, trivial lift (coefficients in [0, p)).
    q_poly: Vec<BigUint>,
    q_poly_mod_p: Vec<u64>,
    /// -(q_0..q_{n-1}) mod p^W, used when folding t^n in products.
    neg_q: Vec<BigUint>,
    /// sigma^k(t) for k in 1..n (empty when n == 1).
    sigma_images: Vec<ZqElem>,
}

impl ZqContext {
    /// Build the context for Z_q at precision W from a monic degree-n
    /// polynomial over F_p, irreducible mod p. The modulus is lifted
    /// trivially and sigma's image of the generator is computed by a Newton
    /// iteration with precision doubling.
    pub fn new(p: u64, n: usize, w: u32, q_mod_p: &[u64]) -> Result<Self, PadicError> {
        if !fp::is_prime_u64(p) {
            return Err(PadicError::NotPrime(p));
        }
        if n < 1 {
            return Err(PadicError::BadDegree);
        }
        if w < 1 {
            return Err(PadicError::BadPrecision);
        }
        let q_norm: Vec<u64> = q_mod_p.iter().map(|&c| c % p).collect();
        if fp::deg(&q_norm) != Some(n) || q_norm[n] != 1 {
            return Err(PadicError::BadModulus);
        }
        if n > 1 && !fp::is_irreducible(&q_norm, p) {
            return Err(PadicError::ReducibleModulus);
        }
        let p_big = BigUint::from(p);
        let pw = p_big.pow(w);
        let q_poly: Vec<BigUint> = q_norm.iter().map(|&c| BigUint::from(c)).collect();
        let neg_q: Vec<BigUint> = q_poly
            .iter()
            .take(n)
            .map(|c| {
                if c.is_zero() {
                    BigUint::zero()
                } else {
                    &pw - (c % &pw)
                }
            })
            .collect();
        let mut ctx = ZqContext {
            p,
            n,
            w,
            p_big,
            pw,
            q_poly,
            q_poly_mod_p: q_norm,
            neg_q,
            sigma_images: Vec::new(),
        };
        if n > 1 {
            let gen_image = ctx.sigma_generator_image();
            let mut images = vec![gen_image];
            for k in 1..n - 1 {
                let prev = images[k - 1].clone();
                images.push(ctx.horner_subst(&prev, &images[0]));
            }
            ctx.sigma_images = images;
        }
        Ok(ctx)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn precision(&self) -> u32 {
        self.w
    }

    pub fn modulus(&self) -> &BigUint {
        &self.pw
    }

    pub fn q_poly_mod_p(&self) -> &[u64] {
        &self.q_poly_mod_p
    }

    /// Same ring, different working precision.
    pub fn with_precision(&self, w: u32) -> Result<ZqContext, PadicError> {
        ZqContext::new(self.p, self.n, w, &self.q_poly_mod_p)
    }

    // ---- element constructors ----

    pub fn zero(&self) -> ZqElem {
        ZqElem {
            c: vec![BigUint::zero(); self.n],
        }
    }

    pub fn one(&self) -> ZqElem {
        let mut e = self.zero();
        e.c[0] = BigUint::one();
        e
    }

    pub fn from_u64(&self, v: u64) -> ZqElem {
        let mut e = self.zero();
        e.c[0] = BigUint::from(v) % &self.pw;
        e
    }

    pub fn from_i64(&self, v: i64) -> ZqElem {
        let e = self.from_u64(v.unsigned_abs());
        if v < 0 {
            self.neg(&e)
        } else {
            e
        }
    }

    /// Element from little-endian residues in the generator (values taken
    /// mod p^W).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> ZqElem {
        assert!(coeffs.len() <= self.n, "too many coefficients");
        let mut e = self.zero();
        for (i, &v) in coeffs.iter().enumerate() {
            e.c[i] = BigUint::from(v) % &self.pw;
        }
        e
    }

    /// Generator t of the extension (equals 0-degree 1 shift when n == 1).
    pub fn generator(&self) -> ZqElem {
        if self.n == 1 {
            // t is a root of the degree-1 modulus t + q0: t = -q0
            let mut e = self.zero();
            e.c[0] = (&self.pw - &self.q_poly[0]) % &self.pw;
            e
        } else {
            let mut e = self.zero();
            e.c[1] = BigUint::one();
            e
        }
    }

    // ---- ring operations ----

    pub fn add(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        let c = a
            .c
            .iter()
            .zip(&b.c)
            .map(|(x, y)| {
                let s = x + y;
                if s >= self.pw {
                    s - &self.pw
                } else {
                    s
                }
            })
            .collect();
        ZqElem { c }
    }

    pub fn sub(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        let c = a
            .c
            .iter()
            .zip(&b.c)
            .map(|(x, y)| if x >= y { x - y } else { x + &self.pw - y })
            .collect();
        ZqElem { c }
    }

    pub fn neg(&self, a: &ZqElem) -> ZqElem {
        let c = a
            .c
            .iter()
            .map(|x| if x.is_zero() { BigUint::zero() } else { &self.pw - x })
            .collect();
        ZqElem { c }
    }

    pub fn mul(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        if self.n == 1 {
            return ZqElem {
                c: vec![(&a.c[0] * &b.c[0]) % &self.pw],
            };
        }
        // schoolbook convolution, then fold by the monic modulus
        let mut acc = vec![BigUint::zero(); 2 * self.n - 1];
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                acc[i + j] += x * y;
            }
        }
        self.reduce_by_modulus(acc)
    }

    fn reduce_by_modulus(&self, mut acc: Vec<BigUint>) -> ZqElem {
        // t^n = -(q_0 + q_1 t + ... + q_{n-1} t^{n-1})
        let neg_q = &self.neg_q;
        for i in (self.n..acc.len()).rev() {
            let top = std::mem::replace(&mut acc[i], BigUint::zero()) % &self.pw;
            if top.is_zero() {
                continue;
            }
            for (k, nq) in neg_q.iter().enumerate() {
                if !nq.is_zero() {
                    acc[i - self.n + k] += &top * nq;
                }
            }
        }
        acc.truncate(self.n);
        let c = acc.into_iter().map(|x| x % &self.pw).collect();
        ZqElem { c }
    }

    pub fn mul_u64(&self, a: &ZqElem, s: u64) -> ZqElem {
        let sb = BigUint::from(s);
        ZqElem {
            c: a.c.iter().map(|x| (x * &sb) % &self.pw).collect(),
        }
    }

    pub fn mul_biguint(&self, a: &ZqElem, s: &BigUint) -> ZqElem {
        ZqElem {
            c: a.c.iter().map(|x| (x * s) % &self.pw).collect(),
        }
    }

    pub fn pow_u64(&self, a: &ZqElem, mut e: u64) -> ZqElem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// True when `a mod p` is nonzero, i.e. `a` is invertible.
    pub fn is_unit(&self, a: &ZqElem) -> bool {
        a.c.iter().any(|x| !(x % &self.p_big).is_zero())
    }

    /// Inverse of a unit, by a mod-p inverse lifted with Newton iterations.
    pub fn inv(&self, a: &ZqElem) -> Result<ZqElem, PadicError> {
        if !self.is_unit(a) {
            return Err(PadicError::NonUnit);
        }
        // inverse mod p via extended Euclid over F_p[t]
        let a_mod_p: Vec<u64> = a
            .c
            .iter()
            .map(|x| (x % &self.p_big).to_u64_digits().first().copied().unwrap_or(0))
            .collect();
        let (g, s, _) = fp::poly_xgcd(&a_mod_p, &self.q_poly_mod_p, self.p);
        debug_assert_eq!(fp::deg(&g), Some(0), "gcd with irreducible modulus");
        let ginv = fp::inv_mod_u64(g[0], self.p);
        let mut z = self.zero();
        for (i, &si) in s.iter().enumerate() {
            z.c[i] = BigUint::from(fp::mul_mod_u64(si, ginv, self.p));
        }
        // z correct mod p; Newton doubles the precision each round
        let mut prec = 1u32;
        while prec < self.w {
            let az = self.mul(a, &z);
            let two_minus = self.sub(&self.add(&self.one(), &self.one()), &az);
            z = self.mul(&z, &two_minus);
            prec *= 2;
        }
        debug_assert!(self.mul(a, &z) == self.one());
        Ok(z)
    }

    /// Inverse of a small integer (must be a unit mod p).
    pub fn inv_u64(&self, v: u64) -> Result<BigUint, PadicError> {
        if v % self.p == 0 {
            return Err(PadicError::NonUnit);
        }
        let e = self.inv(&self.from_u64(v))?;
        Ok(e.c[0].clone())
    }

    /// Reduce an element modulo p^e for e <= W.
    pub fn reduce_mod_pe(&self, a: &ZqElem, e: u32) -> ZqElem {
        if e >= self.w {
            return a.clone();
        }
        let pe = self.p_big.pow(e);
        ZqElem {
            c: a.c.iter().map(|x| x % &pe).collect(),
        }
    }

    /// Valuation (in p) of an element: min over components. `None` for zero.
    pub fn elem_valuation(&self, a: &ZqElem) -> Option<u32> {
        let mut best: Option<u32> = None;
        for x in &a.c {
            if x.is_zero() {
                continue;
            }
            let mut v = 0u32;
            let mut t = x.clone();
            while (&t % &self.p_big).is_zero() {
                t /= &self.p_big;
                v += 1;
                if let Some(b) = best {
                    if v >= b {
                        break;
                    }
                }
            }
            best = Some(best.map_or(v, |b| b.min(v)));
            if best == Some(0) {
                return Some(0);
            }
        }
        best
    }

    /// Exact division of every component by p^v (components must be
    /// divisible; division is on representatives).
    pub fn elem_shr(&self, a: &ZqElem, v: u32) -> ZqElem {
        let pv = self.p_big.pow(v);
        ZqElem {
            c: a
                .c
                .iter()
                .map(|x| {
                    debug_assert!((x % &pv).is_zero());
                    x / &pv
                })
                .collect(),
        }
    }

    // ---- Frobenius substitution ----

    /// Newton iteration z <- z - Q(z)/Q'(z) from z = t^p mod p, doubling the
    /// precision each step, so Q(z) = 0 mod p^W and z = t^p mod p.
    pub fn sigma_generator_image(&self) -> ZqElem {
        assert!(self.n > 1, "sigma is the identity on Z_p");
        let tp = fp::frobenius_power(&self.q_poly_mod_p, self.p, 1);
        let mut z = self.zero();
        for (i, &c) in tp.iter().enumerate() {
            z.c[i] = BigUint::from(c);
        }
        let mut prec = 1u32;
        while prec < self.w {
            prec = (prec * 2).min(self.w);
            z = self.reduce_mod_pe(&z, prec);
            let qz = self.eval_modulus(&z);
            let dqz = self.eval_modulus_derivative(&z);
            let inv = self
                .inv(&dqz)
                .expect("Q'(z) is a unit for an irreducible modulus");
            let step = self.mul(&qz, &inv);
            z = self.reduce_mod_pe(&self.sub(&z, &step), prec);
        }
        debug_assert!(self.eval_modulus(&z).is_zero());
        z
    }

    fn eval_modulus(&self, z: &ZqElem) -> ZqElem {
        // Horner on Q, coefficients are plain integers
        let mut acc = self.zero();
        for c in self.q_poly.iter().rev() {
            acc = self.mul(&acc, z);
            let mut add = self.zero();
            add.c[0] = c.clone();
            acc = self.add(&acc, &add);
        }
        acc
    }

    fn eval_modulus_derivative(&self, z: &ZqElem) -> ZqElem {
        let mut acc = self.zero();
        for i in (1..=self.n).rev() {
            acc = self.mul(&acc, z);
            let mut add = self.zero();
            add.c[0] = (&self.q_poly[i] * BigUint::from(i as u64)) % &self.pw;
            acc = self.add(&acc, &add);
        }
        acc
    }

    fn horner_subst(&self, x: &ZqElem, image: &ZqElem) -> ZqElem {
        let mut acc = self.zero();
        for i in (0..self.n).rev() {
            acc = self.mul(&acc, image);
            let mut add = self.zero();
            add.c[0] = x.c[i].clone();
            acc = self.add(&acc, &add);
        }
        acc
    }

    /// k-fold Frobenius substitution: coefficientwise sigma is the identity
    /// on Z_p components, so this is a Horner evaluation at sigma^k(t).
    pub fn apply_sigma(&self, x: &ZqElem, k: usize) -> ZqElem {
        let k = k % self.n;
        if k == 0 || self.n == 1 {
            return x.clone();
        }
        self.horner_subst(x, &self.sigma_images[k - 1])
    }

    // ---- scaled elements ----

    pub fn scaled_zero(&self) -> ScaledZq {
        ScaledZq {
            shift: 0,
            m: self.zero(),
        }
    }

    pub fn scaled_from_elem(&self, m: ZqElem) -> ScaledZq {
        self.canonicalize(ScaledZq { shift: 0, m })
    }

    pub fn scaled_from_i64(&self, v: i64) -> ScaledZq {
        self.scaled_from_elem(self.from_i64(v))
    }

    /// Canonical form: zero mantissa forces shift 0, otherwise all p factors
    /// are moved from the mantissa into the shift. Value-preserving on
    /// representatives and idempotent.
    pub fn canonicalize(&self, x: ScaledZq) -> ScaledZq {
        match self.elem_valuation(&x.m) {
            None => self.scaled_zero(),
            Some(0) => x,
            Some(v) => ScaledZq {
                shift: x.shift + v as i64,
                m: self.elem_shr(&x.m, v),
            },
        }
    }

    /// Align to the smaller shift; the larger operand's mantissa is scaled by
    /// p^delta mod p^W.
    pub fn scaled_add(&self, a: &ScaledZq, b: &ScaledZq) -> ScaledZq {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let (lo, hi) = if a.shift <= b.shift { (a, b) } else { (b, a) };
        let delta = (hi.shift - lo.shift) as u32;
        let hi_m = if delta >= self.w {
            self.zero()
        } else {
            self.mul_biguint(&hi.m, &self.p_big.pow(delta))
        };
        self.canonicalize(ScaledZq {
            shift: lo.shift,
            m: self.add(&lo.m, &hi_m),
        })
    }

    pub fn scaled_neg(&self, a: &ScaledZq) -> ScaledZq {
        ScaledZq {
            shift: a.shift,
            m: self.neg(&a.m),
        }
    }

    pub fn scaled_sub(&self, a: &ScaledZq, b: &ScaledZq) -> ScaledZq {
        self.scaled_add(a, &self.scaled_neg(b))
    }

    pub fn scaled_mul(&self, a: &ScaledZq, b: &ScaledZq) -> ScaledZq {
        if a.is_zero() || b.is_zero() {
            return self.scaled_zero();
        }
        self.canonicalize(ScaledZq {
            shift: a.shift + b.shift,
            m: self.mul(&a.m, &b.m),
        })
    }

    /// Exact division by a nonzero machine integer: factor m = p^v * u with u
    /// a unit, subtract v from the shift and multiply by u^{-1}.
    pub fn scaled_div_exact_int(&self, x: &ScaledZq, m: i64) -> ScaledZq {
        assert!(m != 0, "division by zero integer");
        if x.is_zero() {
            return self.scaled_zero();
        }
        let (v, u) = self.split_p_power(m.unsigned_abs());
        let uinv = self.inv_u64(u).expect("unit part is invertible");
        let mut out = ScaledZq {
            shift: x.shift - v as i64,
            m: self.mul_biguint(&x.m, &uinv),
        };
        if m < 0 {
            out.m = self.neg(&out.m);
        }
        self.canonicalize(out)
    }

    /// Split u = p^v * (unit), returning (v, unit).
    pub fn split_p_power(&self, mut u: u64) -> (u32, u64) {
        let mut v = 0u32;
        while u % self.p == 0 {
            u /= self.p;
            v += 1;
        }
        (v, u)
    }

    /// Two scaled values represent the same p-adic number modulo p^e.
    pub fn scaled_eq_mod(&self, a: &ScaledZq, b: &ScaledZq, e: i64) -> bool {
        let d = self.scaled_sub(a, b);
        match d.valuation(self) {
            None => true,
            Some(v) => v >= e,
        }
    }
}
