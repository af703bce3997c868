//! Polynomial arithmetic over the prime field F_p, used for modulus
//! validation, irreducibility certification and mod-p inverses.
//!
//! Polynomials are little-endian `Vec<u64>` with entries in `[0, p)`.

/// Deterministic Miller-Rabin primality test for `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`.
pub fn inv_mod_u64(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p)
    let (mut r0, mut r1) = (a as i128 % p as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "not invertible mod p");
    s0.rem_euclid(p as i128) as u64
}

pub fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn deg(v: &[u64]) -> Option<usize> {
    let mut d = v.len();
    while d > 0 && v[d - 1] == 0 {
        d -= 1;
    }
    d.checked_sub(1)
}

pub fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai as u128 * bj as u128) % p as u128;
        }
    }
    let mut v: Vec<u64> = out.into_iter().map(|x| x as u64).collect();
    trim(&mut v);
    v
}

/// Remainder of `a` modulo a monic polynomial `m`.
pub fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let md = deg(m).expect("zero modulus");
    assert_eq!(m[md], 1, "modulus must be monic");
    let mut r: Vec<u64> = a.to_vec();
    trim(&mut r);
    while let Some(rd) = deg(&r) {
        if rd < md {
            break;
        }
        let c = r[rd];
        for k in 0..md {
            let t = mul_mod_u64(c, m[k], p);
            r[rd - md + k] = (r[rd - md + k] + p - t) % p;
        }
        r[rd] = 0;
        trim(&mut r);
    }
    r
}

pub fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    poly_rem(&poly_mul(a, b, p), m, p)
}

/// `x^(p^k) mod m`, by k successive Frobenius powers.
pub fn frobenius_power(m: &[u64], p: u64, k: usize) -> Vec<u64> {
    let mut h = vec![0, 1]; // x
    for _ in 0..k {
        h = poly_powmod(&h, p, m, p);
    }
    h
}

pub fn poly_powmod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut base = poly_rem(a, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &base, m, p);
        }
        base = poly_mulmod(&base, &base, m, p);
        e >>= 1;
    }
    acc
}

pub fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        // make r1 monic so poly_rem applies
        let d1 = deg(&r1).unwrap();
        let inv = inv_mod_u64(r1[d1], p);
        let monic: Vec<u64> = r1.iter().map(|&c| mul_mod_u64(c, inv, p)).collect();
        let r = poly_rem(&r0, &monic, p);
        r0 = r1;
        r1 = r;
    }
    if let Some(d0) = deg(&r0) {
        let inv = inv_mod_u64(r0[d0], p);
        r0 = r0.iter().map(|&c| mul_mod_u64(c, inv, p)).collect();
    }
    r0
}

/// Extended Euclid over F_p[x]: returns (g, s, t) with s*a + t*b = g, g monic.
pub fn poly_xgcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let qs = poly_mul(&q, &s1, p);
        let qt = poly_mul(&q, &t1, p);
        let ns = poly_sub(&s0, &qs, p);
        let nt = poly_sub(&t0, &qt, p);
        s0 = std::mem::replace(&mut s1, ns);
        t0 = std::mem::replace(&mut t1, nt);
    }
    if let Some(d0) = deg(&r0) {
        let inv = inv_mod_u64(r0[d0], p);
        let sc = |v: &[u64]| v.iter().map(|&c| mul_mod_u64(c, inv, p)).collect::<Vec<_>>();
        return (sc(&r0), sc(&s0), sc(&t0));
    }
    (r0, s0, t0)
}

pub fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

/// Division with remainder by an arbitrary nonzero divisor.
pub fn poly_divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let bd = deg(b).expect("division by zero polynomial");
    let lead_inv = inv_mod_u64(b[bd], p);
    let mut r = a.to_vec();
    trim(&mut r);
    let mut q = vec![0u64; r.len().saturating_sub(bd)];
    while let Some(rd) = deg(&r) {
        if rd < bd {
            break;
        }
        let c = mul_mod_u64(r[rd], lead_inv, p);
        q[rd - bd] = c;
        for k in 0..=bd {
            let t = mul_mod_u64(c, b[k], p);
            r[rd - bd + k] = (r[rd - bd + k] + p - t) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Rabin irreducibility test for a monic degree-m polynomial over F_p.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = match deg(f) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if f[m] != 1 {
        return false;
    }
    // x^(p^m) == x mod f, and gcd(x^(p^(m/l)) - x, f) == 1 for prime l | m
    let mut prime_divs = Vec::new();
    let mut mm = m;
    let mut l = 2;
    while l * l <= mm {
        if mm % l == 0 {
            prime_divs.push(l);
            while mm % l == 0 {
                mm /= l;
            }
        }
        l += 1;
    }
    if mm > 1 {
        prime_divs.push(mm);
    }
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut checkpoints: Vec<(usize, Vec<u64>)> = Vec::new();
    for k in 1..=m {
        h = poly_powmod(&h, p, f, p);
        if prime_divs.iter().any(|l| k == m / l) {
            checkpoints.push((k, h.clone()));
        }
    }
    if h != poly_rem(&x, f, p) {
        return false;
    }
    for (_, hk) in checkpoints {
        let diff = poly_sub(&hk, &x, p);
        let g = poly_gcd(&diff, f, p);
        if deg(&g) != Some(0) {
            return false;
        }
    }
    true
}
