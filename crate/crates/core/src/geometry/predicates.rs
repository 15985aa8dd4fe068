//! Adaptive-precision exact-sign predicates after Shewchuk
//! (<https://www.cs.cmu.edu/~quake/robust.html>).
//!
//! `orient2d` is the full adaptive transcription. `incircle` runs the cheap
//! floating-point filter and the first adaptive stage; if those cannot certify
//! the sign it falls back to a complete evaluation of the 4x4 determinant in
//! expansion arithmetic, which is slower but exact for every input.

#![allow(clippy::too_many_arguments)]

const SPLITTER: f64 = 134_217_729f64;
const EPSILON: f64 = 0.000_000_000_000_000_111_022_302_462_515_65;
const RESULTERRBOUND: f64 = (3.0 + 8.0 * EPSILON) * EPSILON;
const CCWERRBOUND_A: f64 = (3.0 + 16.0 * EPSILON) * EPSILON;
const CCWERRBOUND_B: f64 = (2.0 + 12.0 * EPSILON) * EPSILON;
const CCWERRBOUND_C: f64 = (9.0 + 64.0 * EPSILON) * EPSILON * EPSILON;
const ICCERRBOUND_A: f64 = (10.0 + 96.0 * EPSILON) * EPSILON;
const ICCERRBOUND_B: f64 = (4.0 + 48.0 * EPSILON) * EPSILON;
const ICCERRBOUND_C: f64 = (44.0 + 576.0 * EPSILON) * EPSILON * EPSILON;

/// Positive if `pa`, `pb`, `pc` occur in counterclockwise order, negative if
/// clockwise, zero if collinear. The sign is exact.
pub fn orient2d(pa: [f64; 2], pb: [f64; 2], pc: [f64; 2]) -> f64 {
    let detleft = (pa[0] - pc[0]) * (pb[1] - pc[1]);
    let detright = (pa[1] - pc[1]) * (pb[0] - pc[0]);
    let det = detleft - detright;

    let detsum = if detleft > 0.0 {
        if detright <= 0.0 {
            return det;
        }
        detleft + detright
    } else if detleft < 0.0 {
        if detright >= 0.0 {
            return det;
        }
        -detleft - detright
    } else {
        return det;
    };
    let errbound = CCWERRBOUND_A * detsum;
    if det >= errbound || -det >= errbound {
        det
    } else {
        orient2d_adapt(pa, pb, pc, detsum)
    }
}

fn orient2d_adapt(pa: [f64; 2], pb: [f64; 2], pc: [f64; 2], detsum: f64) -> f64 {
    let acx = pa[0] - pc[0];
    let bcx = pb[0] - pc[0];
    let acy = pa[1] - pc[1];
    let bcy = pb[1] - pc[1];

    let (detleft, detlefttail) = two_product(acx, bcy);
    let (detright, detrighttail) = two_product(acy, bcx);

    let (b3, b2, b1, b0) = two_two_diff(detleft, detlefttail, detright, detrighttail);
    let b = [b0, b1, b2, b3];

    let mut det = estimate(&b);
    let errbound = CCWERRBOUND_B * detsum;
    if det >= errbound || -det >= errbound {
        return det;
    }

    let acxtail = two_diff_tail(pa[0], pc[0], acx);
    let bcxtail = two_diff_tail(pb[0], pc[0], bcx);
    let acytail = two_diff_tail(pa[1], pc[1], acy);
    let bcytail = two_diff_tail(pb[1], pc[1], bcy);

    if acxtail == 0.0 && acytail == 0.0 && bcxtail == 0.0 && bcytail == 0.0 {
        return det;
    }

    let errbound = CCWERRBOUND_C * detsum + RESULTERRBOUND * det.abs();
    det += (acx * bcytail + bcy * acxtail) - (acy * bcxtail + bcx * acytail);

    if det >= errbound || -det >= errbound {
        return det;
    }

    let (s1, s0) = two_product(acxtail, bcy);
    let (t1, t0) = two_product(acytail, bcx);
    let (u3, u2, u1, u0) = two_two_diff(s1, s0, t1, t0);
    let u = [u0, u1, u2, u3];

    let mut c1 = [0.0f64; 8];
    let c1len = fast_expansion_sum_zeroelim(&b, &u, &mut c1);

    let (s1, s0) = two_product(acx, bcytail);
    let (t1, t0) = two_product(acy, bcxtail);
    let (u3, u2, u1, u0) = two_two_diff(s1, s0, t1, t0);
    let u = [u0, u1, u2, u3];

    let mut c2 = [0.0f64; 12];
    let c2len = fast_expansion_sum_zeroelim(&c1[..c1len], &u, &mut c2);

    let (s1, s0) = two_product(acxtail, bcytail);
    let (t1, t0) = two_product(acytail, bcxtail);
    let (u3, u2, u1, u0) = two_two_diff(s1, s0, t1, t0);
    let u = [u0, u1, u2, u3];

    let mut d = [0.0f64; 16];
    let dlen = fast_expansion_sum_zeroelim(&c2[..c2len], &u, &mut d);
    d[dlen - 1]
}

/// Positive if `pd` lies strictly inside the circle through `pa`, `pb`, `pc`
/// (given in counterclockwise order), negative if strictly outside, zero if
/// cocircular. The sign is exact.
pub fn incircle(pa: [f64; 2], pb: [f64; 2], pc: [f64; 2], pd: [f64; 2]) -> f64 {
    let adx = pa[0] - pd[0];
    let bdx = pb[0] - pd[0];
    let cdx = pc[0] - pd[0];
    let ady = pa[1] - pd[1];
    let bdy = pb[1] - pd[1];
    let cdy = pc[1] - pd[1];

    let bdxcdy = bdx * cdy;
    let cdxbdy = cdx * bdy;
    let alift = adx * adx + ady * ady;

    let cdxady = cdx * ady;
    let adxcdy = adx * cdy;
    let blift = bdx * bdx + bdy * bdy;

    let adxbdy = adx * bdy;
    let bdxady = bdx * ady;
    let clift = cdx * cdx + cdy * cdy;

    let det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);

    let permanent = (bdxcdy.abs() + cdxbdy.abs()) * alift
        + (cdxady.abs() + adxcdy.abs()) * blift
        + (adxbdy.abs() + bdxady.abs()) * clift;
    let errbound = ICCERRBOUND_A * permanent;
    if det > errbound || -det > errbound {
        return det;
    }
    incircle_adapt(pa, pb, pc, pd, permanent)
}

fn incircle_adapt(pa: [f64; 2], pb: [f64; 2], pc: [f64; 2], pd: [f64; 2], permanent: f64) -> f64 {
    let adx = pa[0] - pd[0];
    let bdx = pb[0] - pd[0];
    let cdx = pc[0] - pd[0];
    let ady = pa[1] - pd[1];
    let bdy = pb[1] - pd[1];
    let cdy = pc[1] - pd[1];

    let (bdxcdy1, bdxcdy0) = two_product(bdx, cdy);
    let (cdxbdy1, cdxbdy0) = two_product(cdx, bdy);
    let (bc3, bc2, bc1, bc0) = two_two_diff(bdxcdy1, bdxcdy0, cdxbdy1, cdxbdy0);
    let bc = [bc0, bc1, bc2, bc3];

    let mut axbc = [0f64; 8];
    let axbclen = scale_expansion_zeroelim(&bc, adx, &mut axbc);
    let mut axxbc = [0f64; 16];
    let axxbclen = scale_expansion_zeroelim(&axbc[..axbclen], adx, &mut axxbc);
    let mut aybc = [0f64; 8];
    let aybclen = scale_expansion_zeroelim(&bc, ady, &mut aybc);
    let mut ayybc = [0f64; 16];
    let ayybclen = scale_expansion_zeroelim(&aybc[..aybclen], ady, &mut ayybc);
    let mut adet = [0f64; 32];
    let alen = fast_expansion_sum_zeroelim(&axxbc[..axxbclen], &ayybc[..ayybclen], &mut adet);

    let (cdxady1, cdxady0) = two_product(cdx, ady);
    let (adxcdy1, adxcdy0) = two_product(adx, cdy);
    let (ca3, ca2, ca1, ca0) = two_two_diff(cdxady1, cdxady0, adxcdy1, adxcdy0);
    let ca = [ca0, ca1, ca2, ca3];

    let mut bxca = [0f64; 8];
    let bxcalen = scale_expansion_zeroelim(&ca, bdx, &mut bxca);
    let mut bxxca = [0f64; 16];
    let bxxcalen = scale_expansion_zeroelim(&bxca[..bxcalen], bdx, &mut bxxca);
    let mut byca = [0f64; 8];
    let bycalen = scale_expansion_zeroelim(&ca, bdy, &mut byca);
    let mut byyca = [0f64; 16];
    let byycalen = scale_expansion_zeroelim(&byca[..bycalen], bdy, &mut byyca);
    let mut bdet = [0f64; 32];
    let blen = fast_expansion_sum_zeroelim(&bxxca[..bxxcalen], &byyca[..byycalen], &mut bdet);

    let (adxbdy1, adxbdy0) = two_product(adx, bdy);
    let (bdxady1, bdxady0) = two_product(bdx, ady);
    let (ab3, ab2, ab1, ab0) = two_two_diff(adxbdy1, adxbdy0, bdxady1, bdxady0);
    let ab = [ab0, ab1, ab2, ab3];

    let mut cxab = [0f64; 8];
    let cxablen = scale_expansion_zeroelim(&ab, cdx, &mut cxab);
    let mut cxxab = [0f64; 16];
    let cxxablen = scale_expansion_zeroelim(&cxab[..cxablen], cdx, &mut cxxab);
    let mut cyab = [0f64; 8];
    let cyablen = scale_expansion_zeroelim(&ab, cdy, &mut cyab);
    let mut cyyab = [0f64; 16];
    let cyyablen = scale_expansion_zeroelim(&cyab[..cyablen], cdy, &mut cyyab);
    let mut cdet = [0f64; 32];
    let clen = fast_expansion_sum_zeroelim(&cxxab[..cxxablen], &cyyab[..cyyablen], &mut cdet);

    let mut abdet = [0f64; 64];
    let ablen = fast_expansion_sum_zeroelim(&adet[..alen], &bdet[..blen], &mut abdet);
    let mut fin1 = [0f64; 96];
    let finlen = fast_expansion_sum_zeroelim(&abdet[..ablen], &cdet[..clen], &mut fin1);

    let mut det = estimate(&fin1[..finlen]);
    let errbound = ICCERRBOUND_B * permanent;
    if det >= errbound || -det >= errbound {
        return det;
    }

    let adxtail = two_diff_tail(pa[0], pd[0], adx);
    let adytail = two_diff_tail(pa[1], pd[1], ady);
    let bdxtail = two_diff_tail(pb[0], pd[0], bdx);
    let bdytail = two_diff_tail(pb[1], pd[1], bdy);
    let cdxtail = two_diff_tail(pc[0], pd[0], cdx);
    let cdytail = two_diff_tail(pc[1], pd[1], cdy);
    if adxtail == 0.0
        && bdxtail == 0.0
        && cdxtail == 0.0
        && adytail == 0.0
        && bdytail == 0.0
        && cdytail == 0.0
    {
        // The coordinate differences were exact, so fin1 is the exact
        // determinant.
        return det;
    }

    let errbound = ICCERRBOUND_C * permanent + RESULTERRBOUND * det.abs();
    det += ((adx * adx + ady * ady)
        * ((bdx * cdytail + cdy * bdxtail) - (bdy * cdxtail + cdx * bdytail))
        + 2.0 * (adx * adxtail + ady * adytail) * (bdx * cdy - bdy * cdx))
        + ((bdx * bdx + bdy * bdy)
            * ((cdx * adytail + ady * cdxtail) - (cdy * adxtail + adx * cdytail))
            + 2.0 * (bdx * bdxtail + bdy * bdytail) * (cdx * ady - cdy * adx))
        + ((cdx * cdx + cdy * cdy)
            * ((adx * bdytail + bdy * adxtail) - (ady * bdxtail + bdx * adytail))
            + 2.0 * (cdx * cdxtail + cdy * cdytail) * (adx * bdy - ady * bdx));

    if det >= errbound || -det >= errbound {
        return det;
    }

    incircle_exact(pa, pb, pc, pd)
}

// -------------------------------------------------------------------------
// Exact fallback in general expansion arithmetic.
// -------------------------------------------------------------------------

fn exp_sum(e: &[f64], f: &[f64], h: &mut Vec<f64>) {
    h.clear();
    h.resize(e.len() + f.len(), 0.0);
    let n = fast_expansion_sum_zeroelim(e, f, h);
    h.truncate(n);
}

fn exp_scale(e: &[f64], s: f64, h: &mut Vec<f64>) {
    h.clear();
    h.resize(2 * e.len(), 0.0);
    let n = scale_expansion_zeroelim(e, s, h);
    h.truncate(n);
}

fn exp_mul(e: &[f64], f: &[f64]) -> Vec<f64> {
    let mut acc = vec![0.0];
    let mut term = Vec::new();
    let mut next = Vec::new();
    for &s in f {
        exp_scale(e, s, &mut term);
        exp_sum(&acc, &term, &mut next);
        std::mem::swap(&mut acc, &mut next);
    }
    acc
}

fn exp_neg(e: &mut [f64]) {
    for x in e {
        *x = -*x;
    }
}

fn exp_diff(e: &[f64], f: &[f64]) -> Vec<f64> {
    let mut nf = f.to_vec();
    exp_neg(&mut nf);
    let mut h = Vec::new();
    exp_sum(e, &nf, &mut h);
    h
}

fn exp_sign(e: &[f64]) -> f64 {
    // Nonoverlapping expansions are stored in increasing order of magnitude;
    // the largest component carries the sign.
    *e.last().unwrap()
}

fn two_diff_exp(a: f64, b: f64) -> [f64; 2] {
    let (x, y) = two_diff(a, b);
    [y, x]
}

fn incircle_exact(pa: [f64; 2], pb: [f64; 2], pc: [f64; 2], pd: [f64; 2]) -> f64 {
    let adx = two_diff_exp(pa[0], pd[0]);
    let bdx = two_diff_exp(pb[0], pd[0]);
    let cdx = two_diff_exp(pc[0], pd[0]);
    let ady = two_diff_exp(pa[1], pd[1]);
    let bdy = two_diff_exp(pb[1], pd[1]);
    let cdy = two_diff_exp(pc[1], pd[1]);

    let bc = exp_diff(&exp_mul(&bdx, &cdy), &exp_mul(&cdx, &bdy));
    let ca = exp_diff(&exp_mul(&cdx, &ady), &exp_mul(&adx, &cdy));
    let ab = exp_diff(&exp_mul(&adx, &bdy), &exp_mul(&bdx, &ady));

    let mut alift = Vec::new();
    exp_sum(&exp_mul(&adx, &adx), &exp_mul(&ady, &ady), &mut alift);
    let mut blift = Vec::new();
    exp_sum(&exp_mul(&bdx, &bdx), &exp_mul(&bdy, &bdy), &mut blift);
    let mut clift = Vec::new();
    exp_sum(&exp_mul(&cdx, &cdx), &exp_mul(&cdy, &cdy), &mut clift);

    let mut det = Vec::new();
    exp_sum(&exp_mul(&alift, &bc), &exp_mul(&blift, &ca), &mut det);
    let mut full = Vec::new();
    exp_sum(&det, &exp_mul(&clift, &ab), &mut full);
    exp_sign(&full)
}

// -------------------------------------------------------------------------
// Expansion primitives.
// -------------------------------------------------------------------------

fn scale_expansion_zeroelim(e: &[f64], b: f64, h: &mut [f64]) -> usize {
    let (bhi, blo) = split(b);
    let (mut q, hh) = two_product_presplit(e[0], b, bhi, blo);
    let mut hindex = 0;
    if hh != 0.0 {
        h[hindex] = hh;
        hindex += 1;
    }
    for &enow in &e[1..] {
        let (product1, product0) = two_product_presplit(enow, b, bhi, blo);
        let (sum, hh) = two_sum(q, product0);
        if hh != 0.0 {
            h[hindex] = hh;
            hindex += 1;
        }
        let (new_q, hh) = fast_two_sum(product1, sum);
        q = new_q;
        if hh != 0.0 {
            h[hindex] = hh;
            hindex += 1;
        }
    }
    if q != 0.0 || hindex == 0 {
        h[hindex] = q;
        hindex += 1;
    }
    hindex
}

fn fast_expansion_sum_zeroelim(e: &[f64], f: &[f64], h: &mut [f64]) -> usize {
    let mut enow = e[0];
    let mut fnow = f[0];
    let mut eindex = 0;
    let mut findex = 0;
    let mut q;
    if (fnow > enow) == (fnow > -enow) {
        q = enow;
        eindex += 1;
    } else {
        q = fnow;
        findex += 1;
    }

    let mut hindex = 0;
    if eindex < e.len() && findex < f.len() {
        enow = e[eindex];
        fnow = f[findex];
        let (new_q, hh) = if (fnow > enow) == (fnow > -enow) {
            eindex += 1;
            fast_two_sum(enow, q)
        } else {
            findex += 1;
            fast_two_sum(fnow, q)
        };
        q = new_q;
        if hh != 0.0 {
            h[hindex] = hh;
            hindex += 1;
        }

        while eindex < e.len() && findex < f.len() {
            enow = e[eindex];
            fnow = f[findex];
            let (new_q, hh) = if (fnow > enow) == (fnow > -enow) {
                eindex += 1;
                two_sum(q, enow)
            } else {
                findex += 1;
                two_sum(q, fnow)
            };
            q = new_q;
            if hh != 0.0 {
                h[hindex] = hh;
                hindex += 1;
            }
        }
    }

    while eindex < e.len() {
        let (new_q, hh) = two_sum(q, e[eindex]);
        q = new_q;
        eindex += 1;
        if hh != 0.0 {
            h[hindex] = hh;
            hindex += 1;
        }
    }
    while findex < f.len() {
        let (new_q, hh) = two_sum(q, f[findex]);
        q = new_q;
        findex += 1;
        if hh != 0.0 {
            h[hindex] = hh;
            hindex += 1;
        }
    }

    if q != 0.0 || hindex == 0 {
        h[hindex] = q;
        hindex += 1;
    }
    hindex
}

fn estimate(e: &[f64]) -> f64 {
    e.iter().sum()
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let c = SPLITTER * a;
    let abig = c - a;
    let ahi = c - abig;
    let alo = a - ahi;
    (ahi, alo)
}

#[inline]
fn two_product(a: f64, b: f64) -> (f64, f64) {
    let x = a * b;
    let (ahi, alo) = split(a);
    let (bhi, blo) = split(b);
    let err1 = x - ahi * bhi;
    let err2 = err1 - alo * bhi;
    let err3 = err2 - ahi * blo;
    (x, alo * blo - err3)
}

#[inline]
fn two_product_presplit(a: f64, b: f64, bhi: f64, blo: f64) -> (f64, f64) {
    let x = a * b;
    let (ahi, alo) = split(a);
    let err1 = x - ahi * bhi;
    let err2 = err1 - alo * bhi;
    let err3 = err2 - ahi * blo;
    (x, alo * blo - err3)
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let x = a + b;
    let bvirt = x - a;
    let avirt = x - bvirt;
    let bround = b - bvirt;
    let around = a - avirt;
    (x, around + bround)
}

#[inline]
fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let x = a + b;
    let bvirt = x - a;
    (x, b - bvirt)
}

#[inline]
fn two_diff(a: f64, b: f64) -> (f64, f64) {
    let x = a - b;
    (x, two_diff_tail(a, b, x))
}

#[inline]
fn two_diff_tail(a: f64, b: f64, x: f64) -> f64 {
    let bvirt = a - x;
    let avirt = x + bvirt;
    let bround = bvirt - b;
    let around = a - avirt;
    around + bround
}

#[inline]
fn two_one_diff(a1: f64, a0: f64, b: f64) -> (f64, f64, f64) {
    let (i, x0) = two_diff(a0, b);
    let (x2, x1) = two_sum(a1, i);
    (x2, x1, x0)
}

#[inline]
fn two_two_diff(a1: f64, a0: f64, b1: f64, b0: f64) -> (f64, f64, f64, f64) {
    let (j, r0, x0) = two_one_diff(a1, a0, b0);
    let (x3, x2, x1) = two_one_diff(j, r0, b1);
    (x3, x2, x1, x0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orient2d_i128(pa: [i64; 2], pb: [i64; 2], pc: [i64; 2]) -> i128 {
        let acx = (pa[0] - pc[0]) as i128;
        let acy = (pa[1] - pc[1]) as i128;
        let bcx = (pb[0] - pc[0]) as i128;
        let bcy = (pb[1] - pc[1]) as i128;
        acx * bcy - acy * bcx
    }

    fn incircle_i128(pa: [i64; 2], pb: [i64; 2], pc: [i64; 2], pd: [i64; 2]) -> i128 {
        let adx = (pa[0] - pd[0]) as i128;
        let ady = (pa[1] - pd[1]) as i128;
        let bdx = (pb[0] - pd[0]) as i128;
        let bdy = (pb[1] - pd[1]) as i128;
        let cdx = (pc[0] - pd[0]) as i128;
        let cdy = (pc[1] - pd[1]) as i128;
        let alift = adx * adx + ady * ady;
        let blift = bdx * bdx + bdy * bdy;
        let clift = cdx * cdx + cdy * cdy;
        alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy)
            + clift * (adx * bdy - bdx * ady)
    }

    fn f(p: [i64; 2]) -> [f64; 2] {
        [p[0] as f64, p[1] as f64]
    }

    #[test]
    fn orient2d_matches_integer_oracle() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 7) as i64 - 3
        };
        for _ in 0..20000 {
            let pa = [next(), next()];
            let pb = [next(), next()];
            let pc = [next(), next()];
            let exact = orient2d_i128(pa, pb, pc);
            let got = orient2d(f(pa), f(pb), f(pc));
            assert_eq!(got > 0.0, exact > 0, "orient mismatch {pa:?} {pb:?} {pc:?}");
            assert_eq!(got == 0.0, exact == 0);
        }
    }

    #[test]
    fn incircle_matches_integer_oracle() {
        let mut state = 0xdeadbeefcafef00du64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 9) as i64 - 4
        };
        let mut checked = 0usize;
        while checked < 20000 {
            let pa = [next(), next()];
            let pb = [next(), next()];
            let pc = [next(), next()];
            let pd = [next(), next()];
            // incircle assumes counterclockwise (pa, pb, pc)
            if orient2d_i128(pa, pb, pc) <= 0 {
                continue;
            }
            checked += 1;
            let exact = incircle_i128(pa, pb, pc, pd);
            let got = incircle(f(pa), f(pb), f(pc), f(pd));
            assert_eq!(got > 0.0, exact > 0, "{pa:?} {pb:?} {pc:?} {pd:?}");
            assert_eq!(got == 0.0, exact == 0, "{pa:?} {pb:?} {pc:?} {pd:?}");
        }
    }

    #[test]
    fn incircle_detects_exact_cocircularity() {
        // Lattice points on the circle of radius 5.
        let ring = [[5i64, 0], [4, 3], [3, 4], [0, 5], [-3, 4], [-4, 3], [-5, 0], [0, -5]];
        let pa = f(ring[0]);
        let pb = f(ring[1]);
        let pc = f(ring[3]);
        for q in &ring[4..] {
            assert_eq!(incircle(pa, pb, pc, f(*q)), 0.0);
        }
    }

    #[test]
    fn incircle_resolves_tiny_perturbations() {
        let pa = [1.0, 0.0];
        let pb = [0.0, 1.0];
        let pc = [-1.0, 0.0];
        let just_in = [0.0, -1.0 + 1e-15];
        let just_out = [0.0, -1.0 - 1e-15];
        let on = [0.0, -1.0];
        assert!(incircle(pa, pb, pc, just_in) > 0.0);
        assert!(incircle(pa, pb, pc, just_out) < 0.0);
        assert_eq!(incircle(pa, pb, pc, on), 0.0);
    }

    #[test]
    fn orient2d_near_collinear() {
        // Classic adversarial configuration: nearly collinear points with
        // coordinates that are not exactly representable differences.
        let a = [0.5000000000000001, 0.5000000000000001];
        for i in 0..64 {
            for j in 0..64 {
                let b = [12.0 + i as f64 * 2f64.powi(-53), 12.0 + j as f64 * 2f64.powi(-53)];
                let c = [24.0, 24.0];
                let d1 = orient2d(a, b, c);
                let d2 = -orient2d(b, a, c);
                let d3 = orient2d(b, c, a);
                assert_eq!(d1 > 0.0, d2 > 0.0);
                assert_eq!(d1 > 0.0, d3 > 0.0);
                assert_eq!(d1 == 0.0, d3 == 0.0);
            }
        }
    }
}
