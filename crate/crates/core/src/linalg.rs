//! Exact Gaussian elimination over [`GaussianRational`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::GaussianRational;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<GaussianRational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip().expect("pivot is nonzero");
        for v in rows[r][c..].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !pv.is_zero() {
                    *v = &*v - &(&factor * pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{v : A v = 0}`, one vector per free column, in column order.
pub fn nullspace(rows: &[Vec<GaussianRational>], ncols: usize) -> Vec<Vec<GaussianRational>> {
    let mut m: Vec<Vec<GaussianRational>> = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut v = vec![GaussianRational::zero(); ncols];
            v[free] = GaussianRational::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -&row[free];
            }
            v
        })
        .collect()
}

pub fn rank(rows: &[Vec<GaussianRational>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<GaussianRational>], v: &[GaussianRational]) -> bool {
    let ncols = v.len();
    let mut extended = basis.to_vec();
    extended.push(v.to_vec());
    rank(&extended, ncols) == rank(basis, ncols)
}

/// Scales `v` to Gaussian-integer entries with content one, choosing the unit
/// multiple whose first nonzero entry has positive real part and nonnegative
/// imaginary part. The zero vector is returned unchanged.
pub fn normalize_integer(v: &[GaussianRational]) -> Vec<GaussianRational> {
    let Some(first) = v.iter().find(|x| !x.is_zero()) else {
        return v.to_vec();
    };
    let mut den = BigInt::one();
    for x in v {
        den = den.lcm(x.re().denom()).lcm(x.im().denom());
    }
    let mut content = BigInt::zero();
    for x in v {
        let scaled = x.scale_int(&den);
        let (re, im) = (scaled.re().to_integer(), scaled.im().to_integer());
        content = content.gcd(&re).gcd(&im);
    }
    let lead = first.scale_int(&den);
    let units = [
        GaussianRational::one(),
        GaussianRational::i(),
        -GaussianRational::one(),
        -GaussianRational::i(),
    ];
    let unit = units
        .into_iter()
        .find(|u| {
            let w = &lead * u;
            w.re().is_positive() && !w.im().is_negative()
        })
        .expect("some associate lies in the first quadrant");
    let scale = &GaussianRational::from(num_rational::BigRational::new(den, content)) * &unit;
    v.iter().map(|x| x * &scale).collect()
}
