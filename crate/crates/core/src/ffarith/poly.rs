//! Dense univariate polynomials over `F_p`, lowest degree first.
//!
//! The zero polynomial is the empty vector; all functions return trimmed
//! results.

use super::PrimeField;

pub type Poly = Vec<u32>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn is_zero(a: &[u32]) -> bool {
    degree(a).is_none()
}

pub fn x() -> Poly {
    vec![0, 1]
}

pub fn one() -> Poly {
    vec![1]
}

pub fn add(f: PrimeField, a: &[u32], b: &[u32]) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn sub(f: PrimeField, a: &[u32], b: &[u32]) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(out)
}

pub fn scale(f: PrimeField, s: u32, a: &[u32]) -> Poly {
    trim(a.iter().map(|&c| f.mul(s, c)).collect())
}

pub fn mul(f: PrimeField, a: &[u32], b: &[u32]) -> Poly {
    if is_zero(a) || is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Euclidean division; panics if `b` is zero.
pub fn divrem(f: PrimeField, a: &[u32], b: &[u32]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]);
    let mut r = trim(a.to_vec());
    let mut q = vec![0u32; r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - db;
        q[shift] = f.add(q[shift], c);
        for (i, &bc) in b.iter().enumerate().take(db + 1) {
            r[i + shift] = f.sub(r[i + shift], f.mul(c, bc));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(f: PrimeField, a: &[u32], b: &[u32]) -> Poly {
    divrem(f, a, b).1
}

pub fn monic(f: PrimeField, a: &[u32]) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(f, f.inv(a[d]), a),
    }
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub fn gcd(f: PrimeField, a: &[u32], b: &[u32]) -> Poly {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !is_zero(&b) {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, &a)
}

/// `a^e mod m`.
pub fn powmod(f: PrimeField, a: &[u32], mut e: u64, m: &[u32]) -> Poly {
    let mut base = rem(f, a, m);
    let mut acc = rem(f, &one(), m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &base), m);
        }
        base = rem(f, &mul(f, &base, &base), m);
        e >>= 1;
    }
    acc
}

/// All monic polynomials of the given degree, in increasing order of the
/// integer `sum c_i p^i` over the non-leading coefficients.
pub fn monic_of_degree(p: u32, d: usize) -> impl Iterator<Item = Poly> {
    let count = (p as u64).pow(d as u32);
    (0..count).map(move |mut n| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push((n % p as u64) as u32);
            n /= p as u64;
        }
        c.push(1);
        c
    })
}

/// Irreducibility by trial division with every monic polynomial of degree at
/// most `deg / 2`.
pub fn is_irreducible(f: PrimeField, a: &[u32]) -> bool {
    let d = match degree(a) {
        None | Some(0) => return false,
        Some(d) => d,
    };
    for k in 1..=d / 2 {
        for q in monic_of_degree(f.p(), k) {
            if is_zero(&rem(f, a, &q)) {
                return false;
            }
        }
    }
    true
}

/// Factorisation into monic irreducibles with multiplicities, by trial
/// division in increasing degree. The result is sorted by degree and then by
/// the enumeration order of [`monic_of_degree`].
pub fn factor(f: PrimeField, a: &[u32]) -> Vec<(Poly, usize)> {
    let mut rest = monic(f, a);
    let mut out = Vec::new();
    let mut k = 1;
    while let Some(d) = degree(&rest) {
        if d == 0 {
            break;
        }
        if 2 * k > d {
            out.push((rest.clone(), 1));
            break;
        }
        for q in monic_of_degree(f.p(), k) {
            let mut mult = 0;
            loop {
                let (quot, r) = divrem(f, &rest, &q);
                if !is_zero(&r) {
                    break;
                }
                rest = quot;
                mult += 1;
            }
            if mult > 0 {
                out.push((q, mult));
            }
        }
        k += 1;
    }
    // A remaining factor found by the degree cut-off may repeat an earlier
    // one only if it was already divided out, so merging is unnecessary.
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reconstructs() {
        let f = PrimeField::new(5).unwrap();
        let a = vec![1, 2, 3, 4, 1];
        let b = vec![2, 0, 1];
        let (q, r) = divrem(f, &a, &b);
        assert_eq!(add(f, &mul(f, &q, &b), &r), trim(a));
        assert!(degree(&r).map_or(true, |d| d < 2));
    }

    #[test]
    fn x2_plus_2_irreducible_mod_5() {
        let f = PrimeField::new(5).unwrap();
        assert!(is_irreducible(f, &[2, 0, 1]));
        assert!(!is_irreducible(f, &[1, 0, 1]));
        assert!(!is_irreducible(f, &[0, 0, 1]));
    }

    #[test]
    fn factor_x5_minus_x() {
        let f = PrimeField::new(5).unwrap();
        // X^5 - X splits into the five linear factors over F_5.
        let a = vec![0, 4, 0, 0, 0, 1];
        let fac = factor(f, &a);
        assert_eq!(fac.len(), 5);
        assert!(fac.iter().all(|(q, m)| q.len() == 2 && *m == 1));
    }

    #[test]
    fn factor_with_multiplicity() {
        let f = PrimeField::new(3).unwrap();
        // (X + 1)^2 (X^2 + 1)
        let a = mul(f, &mul(f, &[1, 1], &[1, 1]), &[1, 0, 1]);
        let fac = factor(f, &a);
        assert_eq!(fac, vec![(vec![1, 1], 2), (vec![1, 0, 1], 1)]);
    }
}
