//! Truncated power series over Q_p with tracked tail bounds.
//!
//! A [`PadicSeries`] stores coefficients 0..trunc as capped p-adic values,
//! plus a bound on the truncated tail: every missing coefficient `c_k`
//! (k >= trunc) is guaranteed to satisfy
//! `v(c_k) >= tail_val - tail_logs * floor(log_p(k+1))`.
//! The `tail_logs` counter grows by one per formal antidifferentiation, which
//! is exactly how the `m + 1 - floor(log(m+1))` loss of the tiny-integral
//! precision bound arises. Evaluation at a point of positive valuation adds
//! the tail-truncation error to the reported precision, so precision claims
//! stay honest end to end.

use crate::padic::{ilog_floor, pow_p, CappedPadic};
use crate::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub struct PadicSeries {
    p: u64,
    coeffs: Vec<CappedPadic>,
    /// valuation floor for truncated coefficients
    tail_val: i64,
    /// number of log_p-shaped losses applied to the tail bound
    tail_logs: u32,
}

impl PadicSeries {
    pub fn new(p: u64, coeffs: Vec<CappedPadic>, tail_val: i64, tail_logs: u32) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.prime() == p));
        PadicSeries {
            p,
            coeffs,
            tail_val,
            tail_logs,
        }
    }

    /// Series whose omitted tail is integral (the common case for local
    /// expansions of integral data).
    pub fn from_integral_tail(p: u64, coeffs: Vec<CappedPadic>) -> Self {
        Self::new(p, coeffs, 0, 0)
    }

    pub fn zero(p: u64, trunc: usize, absprec: i64) -> Self {
        Self::new(p, vec![CappedPadic::zero(p, absprec); trunc], 0, 0)
    }

    pub fn constant(c: CappedPadic, trunc: usize, absprec: i64) -> Self {
        let p = c.prime();
        let mut v = vec![CappedPadic::zero(p, absprec); trunc];
        if trunc > 0 {
            v[0] = c;
        }
        Self::new(p, v, 0, 0)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &CappedPadic {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[CappedPadic] {
        &self.coeffs
    }

    pub fn tail_val(&self) -> i64 {
        self.tail_val
    }

    pub fn tail_logs(&self) -> u32 {
        self.tail_logs
    }

    fn min_coeff_val(&self) -> i64 {
        self.coeffs
            .iter()
            .map(|c| c.valuation())
            .min()
            .unwrap_or(i64::MAX / 4)
            .min(self.tail_val)
    }

    pub fn truncate(&self, m: usize) -> Self {
        if m >= self.trunc() {
            return self.clone();
        }
        // dropping known coefficients moves them into the tail bound
        let dropped_min = self.coeffs[m..]
            .iter()
            .map(|c| c.valuation())
            .min()
            .unwrap_or(i64::MAX / 4);
        Self::new(
            self.p,
            self.coeffs[..m].to_vec(),
            self.tail_val.min(dropped_min),
            self.tail_logs,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let t = self.trunc().min(other.trunc());
        let coeffs = (0..t).map(|k| self.coeffs[k].add(&other.coeffs[k])).collect();
        let (a, b) = (self.truncate(t), other.truncate(t));
        Self::new(
            self.p,
            coeffs,
            a.tail_val.min(b.tail_val),
            a.tail_logs.max(b.tail_logs),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs.iter().map(|c| c.neg()).collect(),
            self.tail_val,
            self.tail_logs,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &CappedPadic) -> Self {
        Self::new(
            self.p,
            self.coeffs.iter().map(|x| x.mul(c)).collect(),
            self.tail_val + c.valuation(),
            self.tail_logs,
        )
    }

    pub fn scale_ratio(&self, num: &BigInt, den: &BigInt) -> Self {
        let dv = if num.is_zero() {
            0
        } else {
            crate::padic::val_big(num.magnitude(), self.p) as i64
                - crate::padic::val_big(den.magnitude(), self.p) as i64
        };
        Self::new(
            self.p,
            self.coeffs.iter().map(|x| x.scale_ratio(num, den)).collect(),
            self.tail_val + dv,
            self.tail_logs,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let t = self.trunc().min(other.trunc());
        let a = self.truncate(t);
        let b = other.truncate(t);
        let mut coeffs = vec![CappedPadic::zero(self.p, i64::MAX / 4); t];
        for i in 0..t {
            if a.coeffs[i].is_zero() && a.coeffs[i].absprec() > 1_000_000 {
                continue;
            }
            for j in 0..t - i {
                let prod = a.coeffs[i].mul(&b.coeffs[j]);
                coeffs[i + j] = coeffs[i + j].add(&prod);
            }
        }
        let tv = (a.tail_val + b.min_coeff_val())
            .min(b.tail_val + a.min_coeff_val())
            .min(a.tail_val + b.tail_val);
        Self::new(self.p, coeffs, tv, a.tail_logs + b.tail_logs)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.trunc() == 0 {
            return self.clone();
        }
        let coeffs = (1..self.trunc())
            .map(|k| self.coeffs[k].scale_ratio(&BigInt::from(k as i64), &BigInt::from(1)))
            .collect();
        // tail coeff k of f' is (k+1) c_{k+1}: no loss
        Self::new(self.p, coeffs, self.tail_val, self.tail_logs)
    }

    /// Formal antiderivative with zero constant term; each truncated tail
    /// coefficient may now lose floor(log_p(k+1)) digits, tracked in
    /// `tail_logs`.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.trunc() + 1);
        coeffs.push(CappedPadic::zero(self.p, i64::MAX / 4));
        for k in 0..self.trunc() {
            coeffs.push(
                self.coeffs[k].scale_ratio(&BigInt::from(1), &BigInt::from((k + 1) as i64)),
            );
        }
        Self::new(self.p, coeffs, self.tail_val, self.tail_logs + 1)
    }

    /// Multiplicative inverse; constant term must be a nonzero unit-or-known
    /// value. Tail bookkeeping is conservative.
    pub fn invert(&self) -> Result<Self> {
        let t = self.trunc();
        if t == 0 || self.coeffs[0].is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c0inv = self.coeffs[0].invert()?;
        let mut inv = vec![CappedPadic::zero(self.p, c0inv.absprec()); t];
        inv[0] = c0inv.clone();
        for k in 1..t {
            // b_k = -c0inv * sum_{i=1..k} a_i b_{k-i}
            let mut s = CappedPadic::zero(self.p, i64::MAX / 4);
            for i in 1..=k {
                s = s.add(&self.coeffs[i].mul(&inv[k - i]));
            }
            inv[k] = s.neg().mul(&c0inv);
        }
        let v0 = self.coeffs[0].valuation();
        let tv = self.tail_val - 2 * v0;
        Ok(Self::new(self.p, inv, tv, self.tail_logs))
    }

    /// Square root with prescribed branch for the constant term (p odd).
    pub fn sqrt(&self, branch_hint: Option<&CappedPadic>) -> Result<Self> {
        let t = self.trunc();
        if t == 0 {
            return Err(Error::Other("sqrt of empty series".into()));
        }
        let c0 = &self.coeffs[0];
        let s0 = match branch_hint {
            Some(h) => {
                let sq = h.mul(h);
                if !sq.agrees_with(c0) {
                    return Err(Error::Other("sqrt branch hint does not square to c0".into()));
                }
                h.clone()
            }
            None => c0.sqrt()?,
        };
        // Newton: s <- (s + f/s)/2, doubling the correct order each step
        let mut s = Self::constant(s0, t, self.coeffs[0].absprec());
        let half = CappedPadic::one(self.p, self.coeffs[0].absprec() + 8)
            .scale_ratio(&BigInt::from(1), &BigInt::from(2));
        let mut order = 1usize;
        while order < t {
            let fs = self.mul(&s.invert()?);
            s = s.add(&fs).scale(&half);
            order *= 2;
        }
        let mut out = s;
        out.tail_val = self.tail_val.min(out.min_coeff_val());
        out.tail_logs = self.tail_logs;
        Ok(out)
    }

    /// Evaluate at t with v(t) >= 1; the reported precision includes the
    /// tail-truncation error bound.
    pub fn evaluate(&self, t: &CappedPadic) -> CappedPadic {
        let c = if t.is_zero() { t.absprec() } else { t.valuation() };
        assert!(c >= 1, "series evaluation needs v(t) >= 1");
        let mut acc = CappedPadic::zero(self.p, i64::MAX / 4);
        let mut tn = CappedPadic::one(self.p, t.absprec() + self.trunc() as i64 + 8);
        for k in 0..self.trunc() {
            if k > 0 {
                tn = tn.mul(t);
            }
            acc = acc.add(&self.coeffs[k].mul(&tn));
        }
        let err = self.tail_error_val(c);
        acc.with_absprec(acc.absprec().min(err))
    }

    /// Valuation bound for the omitted tail evaluated at v(t) = c.
    pub fn tail_error_val(&self, c: i64) -> i64 {
        let m = self.trunc() as i64;
        let window = 256.max(4 * self.tail_logs as i64 + 16);
        let mut best = i64::MAX / 4;
        for k in m..m + window {
            let b = self.tail_val - self.tail_logs as i64 * ilog_floor(self.p, (k + 1) as u64) as i64
                + k * c;
            best = best.min(b);
        }
        best
    }

    /// Substitute another series with zero constant term: self(g(t)).
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if g.trunc() > 0 && !g.coeffs[0].is_zero() {
            return Err(Error::Other("compose needs g(0) = 0".into()));
        }
        let t = self.trunc().min(g.trunc());
        let mut acc = Self::zero(self.p, t, i64::MAX / 4);
        // Horner from the top
        for k in (0..self.trunc()).rev() {
            acc = acc.mul(g);
            let mut c = vec![CappedPadic::zero(self.p, i64::MAX / 4); t];
            if !c.is_empty() {
                c[0] = self.coeffs[k].clone();
            }
            acc = acc.add(&Self::new(self.p, c, self.tail_val, self.tail_logs));
        }
        // tail of self contributes g^trunc, valuation >= g-val * trunc
        let gv = g.min_coeff_val().max(1);
        let tv = acc
            .tail_val
            .min(self.tail_val + gv * self.trunc() as i64);
        Ok(Self::new(self.p, acc.coeffs, tv, acc.tail_logs.max(self.tail_logs)))
    }

    /// Reduce every coefficient to at most `n` digits of absolute precision.
    pub fn cap_absprec(&self, n: i64) -> Self {
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .map(|c| c.with_absprec(c.absprec().min(n)))
                .collect(),
            self.tail_val,
            self.tail_logs,
        )
    }
}

/// A root cluster of a series on the open disk pZ_p.
#[derive(Clone, Debug)]
pub struct SeriesRoot {
    /// representative, with absprec = number of resolved digits
    pub root: CappedPadic,
    pub multiplicity: usize,
    /// true when the root was resolved to the full requested precision
    pub resolved: bool,
}

/// All roots of F in pZ_p modulo p^N, with multiplicities.
///
/// Simple roots (detected by a derivative of valuation zero at some digit
/// level) are Hensel-refined; otherwise digits are peeled one at a time.
/// When working precision runs out before a cluster separates, the cluster
/// is returned with `resolved = false` so callers can escalate.
pub fn series_roots(f: &PadicSeries, n_target: i64) -> Result<Vec<SeriesRoot>> {
    let p = f.prime();
    // Available coefficient precision limits what we can see.
    let mut prec = i64::MAX / 4;
    for (k, c) in f.coeffs().iter().enumerate() {
        prec = prec.min(c.absprec() + k as i64); // term c_k z^k with v(z) >= 1
    }
    prec = prec.min(f.tail_error_val(1));
    if prec < n_target {
        return Err(Error::PrecisionExhausted(format!(
            "series supports {} digits on pZ_p, need {}",
            prec, n_target
        )));
    }
    let prec = n_target;
    // polynomial in w for z = p*w, coefficients c_k p^k as integers mod p^prec
    let v0 = f
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| c.valuation() + k as i64)
        .min();
    let Some(v0) = v0 else {
        return Err(Error::PrecisionExhausted("series is zero to precision".into()));
    };
    let v0 = v0.min(prec);
    // degree cut: beyond k0, c_k p^k / p^v0 has valuation >= prec - v0 for w in Z_p
    let work = prec - v0;
    if work <= 0 {
        return Err(Error::PrecisionExhausted(
            "all coefficients vanish to requested precision".into(),
        ));
    }
    let mut poly: Vec<BigUint> = Vec::new();
    let m = pow_p(p, work as u32);
    for (k, c) in f.coeffs().iter().enumerate() {
        let vk = k as i64 - v0; // extra valuation of z^k term after normalizing
        if vk >= work {
            break;
        }
        let shifted = c.shift(k as i64 - v0);
        let val = if shifted.is_zero() || shifted.valuation() >= work {
            BigUint::zero()
        } else {
            // representative mod p^work
            let r = shifted.with_absprec(shifted.absprec().min(work));
            if r.is_zero() {
                BigUint::zero()
            } else {
                assert!(r.valuation() >= 0, "normalization broke integrality");
                r.representative() % &m
            }
        };
        poly.push(val);
    }
    while poly.last().map(|c| c.is_zero()) == Some(true) && poly.len() > 1 {
        poly.pop();
    }
    let mut out = Vec::new();
    let digits = roots_zp(&poly, work, p);
    for (root_digits, resolved_digits, exhausted) in digits {
        // z = p * w
        let w = CappedPadic::from_bigint(
            p,
            &BigInt::from_biguint(num_bigint::Sign::Plus, root_digits),
            resolved_digits.max(1),
        );
        let z = w.shift(1);
        // multiplicity: recenter f at z and look for the first visible coefficient
        let mult = multiplicity_at(f, &z, n_target);
        out.push(SeriesRoot {
            root: z,
            multiplicity: mult.max(1),
            resolved: !exhausted,
        });
    }
    // merge duplicate clusters (same resolved digits)
    out.sort_by_key(|r| {
        if r.root.is_zero() {
            BigUint::zero()
        } else {
            r.root.representative()
        }
    });
    out.dedup_by(|a, b| a.root.agrees_with(&b.root) && a.root.absprec() == b.root.absprec());
    Ok(out)
}

/// Roots w in Z_p of an integer polynomial mod p^prec.
/// Returns (digit string, digits resolved, precision-exhausted flag).
fn roots_zp(poly: &[BigUint], prec: i64, p: u64) -> Vec<(BigUint, i64, bool)> {
    let mut results = Vec::new();
    rec(poly, prec, p, BigUint::zero(), 0, &mut results);
    return results;

    fn rec(
        poly: &[BigUint],
        prec: i64,
        p: u64,
        prefix: BigUint,
        depth: i64,
        out: &mut Vec<(BigUint, i64, bool)>,
    ) {
        if prec <= 0 {
            out.push((prefix, depth, true));
            return;
        }
        let m = pow_p(p, prec as u32);
        // roots mod p
        let fp: Vec<u64> = poly
            .iter()
            .map(|c| (c % BigUint::from(p)).to_u64().unwrap())
            .collect();
        if fp.iter().all(|&c| c == 0) {
            // cannot see anything at this depth: every residue is a root mod p
            // -> strip a power of p and recurse without branching would loop;
            // this means the normalized polynomial vanished: treat as exhausted cluster
            out.push((prefix, depth, true));
            return;
        }
        for a in 0..p {
            let fa = eval_fp(&fp, a, p);
            if fa != 0 {
                continue;
            }
            let dfa = eval_dfp(&fp, a, p);
            if dfa != 0 {
                // simple root: Hensel lift fully
                let root = hensel_lift(poly, &m, p, a, prec);
                out.push((
                    &prefix + root * pow_p(p, depth as u32),
                    depth + prec,
                    false,
                ));
            } else {
                // shift: g(w) = f(a + p w) / p^e
                let (g, e) = shift_and_strip(poly, a, p, prec);
                rec(
                    &g,
                    prec - e,
                    p,
                    &prefix + BigUint::from(a) * pow_p(p, depth as u32),
                    depth + 1,
                    out,
                );
            }
        }
    }

    fn eval_fp(f: &[u64], x: u64, p: u64) -> u64 {
        let mut acc = 0u64;
        for c in f.iter().rev() {
            acc = (crate::arith::mul_mod(acc, x, p) + c) % p;
        }
        acc
    }

    fn eval_dfp(f: &[u64], x: u64, p: u64) -> u64 {
        let mut acc = 0u64;
        for (k, c) in f.iter().enumerate().skip(1).rev() {
            acc = (crate::arith::mul_mod(acc, x, p) + crate::arith::mul_mod(k as u64 % p, *c, p)) % p;
        }
        acc
    }

    fn eval_big(f: &[BigUint], x: &BigUint, m: &BigUint) -> BigUint {
        let mut acc = BigUint::zero();
        for c in f.iter().rev() {
            acc = (acc * x + c) % m;
        }
        acc
    }

    fn hensel_lift(poly: &[BigUint], m: &BigUint, p: u64, a: u64, prec: i64) -> BigUint {
        let mut x = BigUint::from(a);
        // Newton iteration doubles digits; derivative is a unit
        let dpoly: Vec<BigUint> = poly
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigUint::from(k as u64))
            .collect();
        for _ in 0..(64 - (prec as u64).leading_zeros() + 2) {
            let fx = eval_big(poly, &x, m);
            if fx.is_zero() {
                break;
            }
            let dfx = eval_big(&dpoly, &x, m);
            let dfx_inv = mod_inverse_big(&dfx, m, p);
            let delta = (fx * dfx_inv) % m;
            x = (&x + m - delta) % m;
        }
        x
    }

    fn mod_inverse_big(a: &BigUint, m: &BigUint, p: u64) -> BigUint {
        let a0 = (a % BigUint::from(p)).to_u64().unwrap();
        let mut x = BigUint::from(crate::arith::inv_mod(a0, p));
        let two = BigUint::from(2u32);
        loop {
            let ax = (a * &x) % m;
            if ax.is_one() {
                break;
            }
            let t = (&two + m - ax) % m;
            x = (&x * t) % m;
        }
        x
    }

    fn shift_and_strip(poly: &[BigUint], a: u64, p: u64, prec: i64) -> (Vec<BigUint>, i64) {
        let m = pow_p(p, prec as u32);
        let d = poly.len();
        // f(a + p w): binomial expansion
        let mut g = vec![BigUint::zero(); d];
        let a_big = BigUint::from(a);
        for j in (0..d).rev() {
            // multiply g by (a + p w): g(w) <- g(w)*(pw + a) + c_j
            let mut ng = vec![BigUint::zero(); d];
            for k in 0..d {
                if g[k].is_zero() {
                    continue;
                }
                ng[k] = (&ng[k] + &g[k] * &a_big) % &m;
                if k + 1 < d {
                    let t = (&g[k] * BigUint::from(p)) % &m;
                    ng[k + 1] = (&ng[k + 1] + t) % &m;
                }
            }
            ng[0] = (&ng[0] + &poly[j]) % &m;
            g = ng;
        }
        // strip the largest power of p dividing all coefficients
        let mut e = prec;
        for c in g.iter().filter(|c| !c.is_zero()) {
            e = e.min(crate::padic::val_big(c, p) as i64);
        }
        if e == prec {
            // identically zero mod p^prec
            return (vec![BigUint::zero()], prec);
        }
        let e = e.max(1);
        let pe = pow_p(p, e as u32);
        let g = g.iter().map(|c| c / &pe).collect();
        (g, e)
    }
}

fn multiplicity_at(f: &PadicSeries, z0: &CappedPadic, n: i64) -> usize {
    // recenter: f(z0 + u) and find the first coefficient distinguishable from 0
    let p = f.prime();
    let t = f.trunc();
    let mut shifted = vec![CappedPadic::zero(p, n); t];
    // c_j binom(j, k) z0^(j-k) summed over j >= k
    for k in 0..t {
        let mut acc = CappedPadic::zero(p, i64::MAX / 4);
        let mut binom = BigInt::one();
        // binom(j, k) for j = k..t
        let mut z_pow = CappedPadic::one(p, n + t as i64 + 4);
        for j in k..t {
            if j > k {
                // update binom(j,k) = binom(j-1,k)*j/(j-k)
                binom = binom * BigInt::from(j as i64) / BigInt::from((j - k) as i64);
                z_pow = z_pow.mul(z0);
            }
            let term = f.coeff(j).scale_ratio(&binom, &BigInt::one()).mul(&z_pow);
            acc = acc.add(&term);
        }
        shifted[k] = acc;
    }
    for (k, c) in shifted.iter().enumerate().skip(0) {
        if k == 0 {
            continue; // constant is ~0 by construction at a root
        }
        if !c.is_zero() {
            return k;
        }
    }
    1
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::Sign;

    fn series(p: u64, coeffs: &[i64], prec: i64) -> PadicSeries {
        PadicSeries::from_integral_tail(
            p,
            coeffs
                .iter()
                .map(|&c| CappedPadic::from_i64(p, c, prec))
                .collect(),
        )
    }

    #[test]
    fn arithmetic_and_eval() {
        let p = 5;
        let f = series(p, &[1, 2, 3], 8);
        let g = series(p, &[0, 1, 0], 8);
        let h = f.mul(&g); // x + 2x^2 (+ 3x^3 truncated)
        let t = CappedPadic::from_i64(p, 5, 8);
        let val = h.evaluate(&t);
        assert_eq!(val.with_absprec(3).representative(), BigUint::from(55u32));
    }

    #[test]
    fn antiderivative_tracks_losses() {
        let p = 5;
        let f = series(p, &[1; 30], 8);
        let int = f.antiderivative();
        // coefficient of t^25 is 1/25: valuation -2
        assert_eq!(int.coeff(25).valuation(), -2);
        assert_eq!(int.tail_logs(), 1);
    }

    #[test]
    fn invert_and_sqrt() {
        let p = 7;
        let f = series(p, &[1, 3, 5, 1, 2, 6, 1, 1], 9);
        let finv = f.invert().unwrap();
        let prod = f.mul(&finv);
        assert!(prod.coeff(0).agrees_with(&CappedPadic::one(p, 9)));
        for k in 1..prod.trunc() {
            assert!(prod.coeff(k).is_zero(), "coeff {} = {}", k, prod.coeff(k));
        }
        let sq = f.mul(&f);
        let back = sq.sqrt(Some(f.coeff(0))).unwrap();
        for k in 0..back.trunc() {
            assert!(back.coeff(k).agrees_with(f.coeff(k)));
        }
    }

    #[test]
    fn roots_trivial() {
        let p = 5;
        // F(z) = z
        let f = series(p, &[0, 1], 6);
        let roots = series_roots(&f, 4).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].root.is_zero());
        assert_eq!(roots[0].multiplicity, 1);

        // F(z) = z^2: double root at origin
        let f = series(p, &[0, 0, 1], 8);
        let roots = series_roots(&f, 4).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].root.is_zero());
        assert_eq!(roots[0].multiplicity, 2);
    }

    #[test]
    fn roots_split_pair() {
        // F(z) = (z - p)(z - 2p) mod p^4: both roots recovered
        let p = 5;
        let prec = 8;
        let f = series(p, &[2 * 25, -3 * 5, 1], prec);
        let roots = series_roots(&f, 4).unwrap();
        assert_eq!(roots.len(), 2);
        let mut reps: Vec<BigUint> = roots
            .iter()
            .map(|r| r.root.with_absprec(3).representative())
            .collect();
        reps.sort();
        assert_eq!(reps, vec![BigUint::from(5u32), BigUint::from(10u32)]);
        assert!(roots.iter().all(|r| r.multiplicity == 1 && r.resolved));
    }

    #[test]
    fn roots_match_exhaustive_scan() {
        // random series vs brute-force scan of pZ/p^k for small p, k <= 4
        let mut seed = 3u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (seed >> 45) as i64 - 200
        };
        for p in [3u64, 5, 7] {
            for _ in 0..20 {
                let coeffs: Vec<i64> = (0..5).map(|_| next()).collect();
                let f = series(p, &coeffs, 6);
                let k = 4i64;
                let roots = match series_roots(&f, k) {
                    Ok(r) => r,
                    Err(_) => continue,
                };
                // brute force: all z in pZ/p^k with F(z) = 0 mod p^k
                let m = pow_p(p, k as u32);
                let mut brute = Vec::new();
                let mut z = BigUint::zero();
                let step = BigUint::from(p);
                while z < m {
                    let zc = CappedPadic::from_bigint(
                        p,
                        &BigInt::from_biguint(Sign::Plus, z.clone()),
                        k,
                    );
                    let v = f.evaluate(&zc);
                    if v.is_zero() || v.valuation() >= k {
                        brute.push(z.clone());
                    }
                    z += &step;
                }
                // every brute root must agree with some cluster and vice versa
                for b in &brute {
                    let bc = CappedPadic::from_bigint(
                        p,
                        &BigInt::from_biguint(Sign::Plus, b.clone()),
                        k,
                    );
                    assert!(
                        roots.iter().any(|r| {
                            let d = r.root.absprec().min(k);
                            r.root.with_absprec(d).agrees_with(&bc.with_absprec(d))
                        }),
                        "brute root {} not found among clusters {:?} for {:?} at p={}",
                        b,
                        roots,
                        coeffs,
                        p
                    );
                }
                for r in &roots {
                    if r.root.valuation() >= 1 || r.root.is_zero() {
                        let d = r.root.absprec().min(k);
                        assert!(
                            brute.iter().any(|b| {
                                let bc = CappedPadic::from_bigint(
                                    p,
                                    &BigInt::from_biguint(Sign::Plus, b.clone()),
                                    k,
                                );
                                r.root.with_absprec(d).agrees_with(&bc.with_absprec(d))
                            }),
                            "cluster {:?} has no brute witness",
                            r
                        );
                    }
                }
            }
        }
    }
}
