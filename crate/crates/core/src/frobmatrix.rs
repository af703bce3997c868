//! Block-structured Frobenius matrices: assembly from the reduction engine,
//! the sigma-twisted norm giving the q-power Frobenius, and characteristic
//! polynomials through a division-free (Berkowitz) algorithm, one block
//! cycle at a time.

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::cohomology::{frob_basis_form, frob_target, frob_y_inv_series, tau_mul, BasisKind, CurveSpec, TauSeries};
use crate::padic::{ScaledZq, ZqContext, ZqElem};
use crate::weil::PrecisionPlan;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("q and r are not coprime")]
    NotCoprime,
    #[error("charpoly rescale needs {needed} digits below precision, only {available} available before the target")]
    PrecisionExhausted { needed: u32, available: u32 },
    #[error("characteristic polynomial coefficient is not in Z_p at target precision")]
    NotZpIntegral,
}

/// Dense square matrix of scaled Z_q entries, row-major.
#[derive(Debug, Clone)]
pub struct ZqMatrix {
    pub size: usize,
    pub a: Vec<ScaledZq>,
}

impl ZqMatrix {
    pub fn zero(ctx: &ZqContext, size: usize) -> Self {
        ZqMatrix {
            size,
            a: vec![ctx.scaled_zero(); size * size],
        }
    }

    pub fn identity(ctx: &ZqContext, size: usize) -> Self {
        let mut m = ZqMatrix::zero(ctx, size);
        for i in 0..size {
            *m.get_mut(i, i) = ctx.scaled_from_i64(1);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &ScaledZq {
        &self.a[i * self.size + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut ScaledZq {
        &mut self.a[i * self.size + j]
    }

    pub fn mul(&self, ctx: &ZqContext, other: &ZqMatrix) -> ZqMatrix {
        assert_eq!(self.size, other.size);
        let n = self.size;
        let mut out = ZqMatrix::zero(ctx, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ctx.scaled_zero();
                for k in 0..n {
                    let x = self.get(i, k);
                    if x.is_zero() {
                        continue;
                    }
                    let prod = ctx.scaled_mul(x, other.get(k, j));
                    acc = ctx.scaled_add(&acc, &prod);
                }
                *out.get_mut(i, j) = acc;
            }
        }
        out
    }

    pub fn apply_sigma(&self, ctx: &ZqContext, k: usize) -> ZqMatrix {
        ZqMatrix {
            size: self.size,
            a: self
                .a
                .iter()
                .map(|e| ScaledZq {
                    shift: e.shift,
                    m: ctx.apply_sigma(&e.m, k),
                })
                .collect(),
        }
    }

    pub fn worst_shift(&self, ctx: &ZqContext) -> Option<i64> {
        self.a.iter().filter_map(|e| e.valuation(ctx)).min()
    }
}

/// Matrix of a (twisted) Frobenius power with respect to B or B': row block j
/// has its only nonzero block in column block `j * mult mod r`.
#[derive(Debug, Clone)]
pub struct FrobBlockMatrix {
    pub r: u64,
    pub d: usize,
    /// The block permutation multiplier: p mod r for the p-power matrix,
    /// q mod r for its norm.
    pub mult: u64,
    /// blocks[j-1] is the (d-1)x(d-1) block of row block j.
    pub blocks: Vec<ZqMatrix>,
}

impl FrobBlockMatrix {
    pub fn size(&self) -> usize {
        (self.r as usize - 1) * (self.d - 1)
    }

    pub fn block_col(&self, j: u64) -> u64 {
        j * self.mult % self.r
    }

    /// Minimal valuation over all entries (`None` for the zero matrix).
    pub fn worst_shift(&self, ctx: &ZqContext) -> Option<i64> {
        self.blocks.iter().filter_map(|b| b.worst_shift(ctx)).min()
    }

    pub fn to_dense(&self, ctx: &ZqContext) -> ZqMatrix {
        let b = self.d - 1;
        let mut m = ZqMatrix::zero(ctx, self.size());
        for j in 1..self.r {
            let l = self.block_col(j);
            debug_assert!(l >= 1);
            let blk = &self.blocks[(j - 1) as usize];
            for bi in 0..b {
                for bj in 0..b {
                    *m.get_mut((j as usize - 1) * b + bi, (l as usize - 1) * b + bj) =
                        blk.get(bi, bj).clone();
                }
            }
        }
        m
    }
}

/// Cycles of j -> j*mult mod r on {1..r-1}, ordered by smallest element and
/// listed starting from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub cycles: Vec<Vec<u64>>,
}

pub fn cycle_decomposition(r: u64, mult: u64) -> Result<CycleDecomposition, MatrixError> {
    let mult = mult % r;
    if num_integer::gcd(r, mult) != 1 {
        return Err(MatrixError::NotCoprime);
    }
    let mut seen = vec![false; r as usize];
    let mut cycles = Vec::new();
    for start in 1..r {
        if seen[start as usize] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut j = start;
        loop {
            seen[j as usize] = true;
            cyc.push(j);
            j = j * mult % r;
            if j == start {
                break;
            }
        }
        cycles.push(cyc);
    }
    Ok(CycleDecomposition { cycles })
}

/// Runs the Frobenius image and full reduction for every basis form, filling
/// the p-power matrix M_F. Rows of a given y-index j are independent and run
/// in parallel; the powers of S are shared.
pub fn assemble_frobenius_matrix(curve: &CurveSpec, plan: &PrecisionPlan) -> FrobBlockMatrix {
    let ctx = &curve.ctx;
    let r = curve.r;
    let d = curve.d;
    let s = frob_y_inv_series(curve, plan);
    // exponent of S per y-index
    let exp_of_j = |j: u64| match plan.basis {
        BasisKind::B => j,
        BasisKind::BPrime => r + j,
    };
    let max_exp = (1..r).map(exp_of_j).max().unwrap();
    let mut powers: Vec<TauSeries> = Vec::with_capacity(max_exp as usize);
    powers.push(s.clone());
    for _ in 2..=max_exp {
        let next = tau_mul(ctx, &curve.fbar, powers.last().unwrap(), &s, plan.series_trunc);
        powers.push(next);
    }
    let mut blocks = vec![ZqMatrix::zero(ctx, d - 1); r as usize - 1];
    // traversal in cycle order under multiplication by q
    let q_mod_r = crate::fp::pow_mod_u64(ctx.p() % r, curve_ext_degree(curve) as u64, r);
    let cycles = cycle_decomposition(r, q_mod_r).expect("p coprime to r");
    for cycle in &cycles.cycles {
        for &j in cycle {
            let s_pow = &powers[(exp_of_j(j) - 1) as usize];
            let rows: Vec<Vec<ScaledZq>> = (0..d - 1)
                .into_par_iter()
                .map(|i| {
                    let form = frob_basis_form(curve, plan, i, j, s_pow, plan.basis);
                    // support pattern: the reduced form lands in column block
                    // jp mod r by construction
                    debug_assert_eq!(form.ell % r, frob_target(ctx.p(), r, j).0 % r);
                    crate::cohomology::reduce_form(form, curve, plan)
                })
                .collect();
            let blk = &mut blocks[(j - 1) as usize];
            for (i, row) in rows.into_iter().enumerate() {
                for (k, v) in row.into_iter().enumerate() {
                    *blk.get_mut(i, k) = v;
                }
            }
        }
    }
    FrobBlockMatrix {
        r,
        d,
        mult: ctx.p() % r,
        blocks,
    }
}

fn curve_ext_degree(curve: &CurveSpec) -> usize {
    curve.ctx.n()
}

/// The q-power Frobenius matrix M = M_F M_F^sigma ... M_F^{sigma^{n-1}},
/// computed per block row with a Horner scheme that applies sigma once per
/// factor: X <- B_{j p^k} sigma(X).
pub fn frobenius_norm(ctx: &ZqContext, mf: &FrobBlockMatrix, n: usize) -> FrobBlockMatrix {
    let r = mf.r;
    if n == 1 {
        return mf.clone();
    }
    let p_mod_r = mf.mult;
    let blocks: Vec<ZqMatrix> = (1..r)
        .into_par_iter()
        .map(|j| {
            // indices j, jp, jp^2, ..., jp^{n-1} mod r
            let mut idx = vec![j];
            for _ in 1..n {
                idx.push(idx.last().unwrap() * p_mod_r % r);
            }
            let mut x = mf.blocks[(idx[n - 1] - 1) as usize].clone();
            for k in (0..n - 1).rev() {
                let twisted = x.apply_sigma(ctx, 1);
                x = mf.blocks[(idx[k] - 1) as usize].mul(ctx, &twisted);
            }
            x
        })
        .collect();
    let q_mod_r = crate::fp::pow_mod_u64(p_mod_r, n as u64, r);
    FrobBlockMatrix {
        r,
        d: mf.d,
        mult: q_mod_r,
        blocks,
    }
}

/// Reference implementation of the norm on dense matrices (kept for tests).
pub fn frobenius_norm_dense(ctx: &ZqContext, mf: &ZqMatrix, n: usize) -> ZqMatrix {
    let mut acc = mf.clone();
    for k in 1..n {
        let twisted = mf.apply_sigma(ctx, k);
        acc = acc.mul(ctx, &twisted);
    }
    acc
}

/// Division-free characteristic polynomial det(tI - A) of a square ZqElem
/// matrix, little-endian coefficients (monic).
pub fn berkowitz_charpoly(ctx: &ZqContext, mat: &[Vec<ZqElem>]) -> Vec<ZqElem> {
    let m = mat.len();
    // descending coefficient vector, charpoly of the empty matrix is 1
    let mut c = vec![ctx.one()];
    for k in 1..=m {
        // Toeplitz column: [1, -a_kk, -(R C), -(R A C), -(R A^2 C), ...]
        let corner = &mat[k - 1][k - 1];
        let row: Vec<&ZqElem> = (0..k - 1).map(|t| &mat[k - 1][t]).collect();
        let col: Vec<ZqElem> = (0..k - 1).map(|t| mat[t][k - 1].clone()).collect();
        let mut qcol = Vec::with_capacity(k + 1);
        qcol.push(ctx.one());
        qcol.push(ctx.neg(corner));
        let mut v = col;
        for step in 0..k.saturating_sub(1) {
            let mut dot = ctx.zero();
            for (x, y) in row.iter().zip(&v) {
                let t = ctx.mul(x, y);
                dot = ctx.add(&dot, &t);
            }
            qcol.push(ctx.neg(&dot));
            if step + 1 < k - 1 {
                // v <- A_{k-1} v
                let mut nv = vec![ctx.zero(); k - 1];
                for (i, nvi) in nv.iter_mut().enumerate() {
                    for (j, vj) in v.iter().enumerate() {
                        if !mat[i][j].is_zero() && !vj.is_zero() {
                            let t = ctx.mul(&mat[i][j], vj);
                            *nvi = ctx.add(nvi, &t);
                        }
                    }
                }
                v = nv;
            }
        }
        // c <- truncated convolution qcol * c, keeping k+1 entries
        let mut nc = vec![ctx.zero(); k + 1];
        for (i, nci) in nc.iter_mut().enumerate() {
            for (jj, cj) in c.iter().enumerate() {
                if i >= jj && i - jj < qcol.len() && !cj.is_zero() {
                    let t = ctx.mul(&qcol[i - jj], cj);
                    *nci = ctx.add(nci, &t);
                }
            }
        }
        c = nc;
    }
    c.reverse();
    c
}

/// Characteristic polynomial of the norm matrix modulo p^{n0}, one cycle
/// block at a time. Entries of each block are rescaled to their minimal
/// common shift, the charpoly is computed division-free on the mantissas and
/// the scaling is undone analytically on the coefficients; exactness of that
/// division and availability of n0 digits are checked. The cycle
/// polynomials are multiplied and every coefficient of the product must lie
/// in Z_p mod p^{n0}.
pub fn charpoly(
    ctx: &ZqContext,
    m: &FrobBlockMatrix,
    cycles: &CycleDecomposition,
    n0: u32,
) -> Result<Vec<BigUint>, MatrixError> {
    let b = m.d - 1;
    let mut product: Vec<ZqElem> = vec![ctx.one()];
    for cycle in &cycles.cycles {
        let c = cycle.len();
        let size = c * b;
        // assemble the cycle block: row block i holds M's block for j_i in
        // column block i+1 mod c (since j_{i+1} = q j_i mod r)
        let mut dense = vec![vec![ctx.scaled_zero(); size]; size];
        for (i, &j) in cycle.iter().enumerate() {
            let blk = &m.blocks[(j - 1) as usize];
            let tcol = (i + 1) % c;
            for bi in 0..b {
                for bj in 0..b {
                    dense[i * b + bi][tcol * b + bj] = blk.get(bi, bj).clone();
                }
            }
        }
        let shift = dense
            .iter()
            .flatten()
            .filter(|e| !e.is_zero())
            .map(|e| e.shift)
            .min()
            .unwrap_or(0)
            .min(0);
        let scaled: Vec<Vec<ZqElem>> = dense
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| {
                        if e.is_zero() {
                            ctx.zero()
                        } else {
                            let delta = (e.shift - shift) as u32;
                            let pd = BigUint::from(ctx.p()).pow(delta);
                            ctx.mul_biguint(&e.m, &pd)
                        }
                    })
                    .collect()
            })
            .collect();
        let chi_scaled = berkowitz_charpoly(ctx, &scaled);
        // undo the scaling: coefficient of t^{size-k} gains p^{k*shift}
        let mut chi = vec![ctx.zero(); size + 1];
        for (idx, coeff) in chi_scaled.iter().enumerate() {
            let k = (size - idx) as u32;
            if shift >= 0 {
                let pd = BigUint::from(ctx.p()).pow(k * shift as u32);
                chi[idx] = ctx.mul_biguint(coeff, &pd);
            } else {
                let need = k * shift.unsigned_abs() as u32;
                if coeff.is_zero() {
                    continue;
                }
                let have = ctx
                    .elem_valuation(coeff)
                    .expect("nonzero coefficient has a valuation");
                if have < need {
                    return Err(MatrixError::PrecisionExhausted {
                        needed: need - have,
                        available: 0,
                    });
                }
                if ctx.precision() < need + n0 {
                    return Err(MatrixError::PrecisionExhausted {
                        needed: need + n0 - ctx.precision(),
                        available: ctx.precision().saturating_sub(need),
                    });
                }
                chi[idx] = ctx.elem_shr(coeff, need);
            }
        }
        // multiply into the running product
        let mut next = vec![ctx.zero(); product.len() + chi.len() - 1];
        for (i, x) in product.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in chi.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let t = ctx.mul(x, y);
                next[i + j] = ctx.add(&next[i + j], &t);
            }
        }
        product = next;
    }
    // coefficients must be rational integers at the target precision
    let mut out = Vec::with_capacity(product.len());
    for coeff in &product {
        let reduced = ctx.reduce_mod_pe(coeff, n0);
        if reduced.c.iter().skip(1).any(|comp| !comp.is_zero()) {
            return Err(MatrixError::NotZpIntegral);
        }
        out.push(reduced.c[0].clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::ZqContext;

    #[test]
    fn cycles_examples() {
        // r=3, q=49: everything fixed
        let c = cycle_decomposition(3, 49).unwrap();
        assert_eq!(c.cycles, vec![vec![1], vec![2]]);
        // r=5, q=7: one 4-cycle 1 -> 2 -> 4 -> 3
        let c = cycle_decomposition(5, 7).unwrap();
        assert_eq!(c.cycles, vec![vec![1, 2, 4, 3]]);
        // r=7, q=169 = 1 mod 7: six singletons
        let c = cycle_decomposition(7, 169).unwrap();
        assert_eq!(c.cycles.len(), 6);
        assert!(c.cycles.iter().all(|cy| cy.len() == 1));
        assert!(cycle_decomposition(6, 3).is_err());
    }

    #[test]
    fn berkowitz_companion_and_identity() {
        let ctx = ZqContext::new(7, 1, 4, &[0, 1]).unwrap();
        // identity 2x2: (t-1)^2 = t^2 - 2t + 1
        let one = ctx.one();
        let id = vec![
            vec![one.clone(), ctx.zero()],
            vec![ctx.zero(), one.clone()],
        ];
        let chi = berkowitz_charpoly(&ctx, &id);
        assert_eq!(chi, vec![ctx.from_i64(1), ctx.from_i64(-2), ctx.from_i64(1)]);
        // companion matrix of t^2 - 3t + 7
        let comp = vec![
            vec![ctx.zero(), ctx.from_i64(-7)],
            vec![ctx.one(), ctx.from_i64(3)],
        ];
        let chi = berkowitz_charpoly(&ctx, &comp);
        assert_eq!(chi, vec![ctx.from_i64(7), ctx.from_i64(-3), ctx.from_i64(1)]);
        // block diagonal of 1x1 blocks (u), (v): (t-u)(t-v)
        let m = vec![
            vec![ctx.from_i64(2), ctx.zero()],
            vec![ctx.zero(), ctx.from_i64(5)],
        ];
        let chi = berkowitz_charpoly(&ctx, &m);
        assert_eq!(chi, vec![ctx.from_i64(10), ctx.from_i64(-7), ctx.from_i64(1)]);
    }

    #[test]
    fn berkowitz_matches_trace_determinant_3x3() {
        let ctx = ZqContext::new(11, 1, 3, &[0, 1]).unwrap();
        let e = |v: i64| ctx.from_i64(v);
        let m = vec![
            vec![e(1), e(2), e(3)],
            vec![e(4), e(5), e(6)],
            vec![e(7), e(8), e(10)],
        ];
        // det = 1(50-48) - 2(40-42) + 3(32-35) = 2 + 4 - 9 = -3
        // trace = 16; sum of principal 2x2 minors: (5*1-2*4)+(10-21)+(50-48) = -3-11+2 = -12
        let chi = berkowitz_charpoly(&ctx, &m);
        assert_eq!(chi[3], e(1));
        assert_eq!(chi[2], e(-16));
        assert_eq!(chi[1], e(-12));
        assert_eq!(chi[0], e(3)); // (-1)^3 det = +3
    }

    #[test]
    fn norm_one_by_one_f49() {
        // entry a -> a sigma(a): for a = alpha at W=1 this is 4 mod 7
        let ctx = ZqContext::new(7, 2, 1, &[4, 6, 1]).unwrap();
        let mut blk = ZqMatrix::zero(&ctx, 1);
        *blk.get_mut(0, 0) = ctx.scaled_from_elem(ctx.generator());
        let mf = FrobBlockMatrix {
            r: 2,
            d: 2,
            mult: 7 % 2,
            blocks: vec![blk],
        };
        let m = frobenius_norm(&ctx, &mf, 2);
        let e = m.blocks[0].get(0, 0);
        assert_eq!(e.shift, 0);
        assert_eq!(e.m, ctx.from_u64(4));
        // dense reference agrees
        let dense = frobenius_norm_dense(&ctx, &mf.to_dense(&ctx), 2);
        assert_eq!(dense.get(0, 0).m, ctx.from_u64(4));
    }

    #[test]
    fn charpoly_negative_shift_rescale() {
        // 1x1 matrix (p^{-1} * 3): chi = t - 3/p; coefficient of t^0 needs one
        // digit of rescale headroom
        let ctx = ZqContext::new(5, 1, 6, &[0, 1]).unwrap();
        let mut blk = ZqMatrix::zero(&ctx, 1);
        *blk.get_mut(0, 0) = ScaledZq { shift: -1, m: ctx.from_u64(15) };
        // value 15/5 = 3 with shift -1 mantissa 15 canonicalizes to 3
        let mf = FrobBlockMatrix { r: 2, d: 2, mult: 1, blocks: vec![blk] };
        let cycles = cycle_decomposition(2, 1).unwrap();
        let chi = charpoly(&ctx, &mf, &cycles, 2).unwrap();
        assert_eq!(chi, vec![BigUint::from(22u32), BigUint::from(1u32)]);
    }
}
