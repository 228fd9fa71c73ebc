//! Exact linear algebra over the rationals and LLL reduction of integer
//! lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Basis of the right kernel of `rows` (each of length `ncols`), one vector
/// per free column of the reduced row echelon form.
pub fn rational_kernel(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..ncols {
                    let delta = &f * &a[r][j];
                    a[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Smallest integer multiple of `v` with coprime entries.
pub fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_rat(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

fn gram_schmidt(b: &[Vec<BigInt>]) -> (Vec<BigRational>, Vec<Vec<BigRational>>) {
    let n = b.len();
    let mut star: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut norms = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let bi = to_rat(&b[i]);
        let mut v = bi.clone();
        for j in 0..i {
            mu[i][j] = dot(&bi, &star[j]) / &norms[j];
            for (x, y) in v.iter_mut().zip(&star[j]) {
                *x -= &mu[i][j] * y;
            }
        }
        norms.push(dot(&v, &v));
        star.push(v);
    }
    (norms, mu)
}

fn round_half_up(q: &BigRational) -> BigInt {
    (q + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

/// LLL reduction with `delta = 3/4` of linearly independent integer vectors.
pub fn lll_reduce(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = b.len();
    if n < 2 {
        return b;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let (mut norms, mut mu) = gram_schmidt(&b);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = round_half_up(&mu[k][j]);
            if q.is_zero() {
                continue;
            }
            let row_j = b[j].clone();
            for (x, y) in b[k].iter_mut().zip(&row_j) {
                *x -= &q * y;
            }
            let qr = BigRational::from_integer(q);
            for i in 0..j {
                let delta_mu = &qr * &mu[j][i];
                mu[k][i] -= delta_mu;
            }
            mu[k][j] -= &qr;
        }
        let lovasz = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if norms[k] >= lovasz {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let gs = gram_schmidt(&b);
            norms = gs.0;
            mu = gs.1;
            k = (k - 1).max(1);
        }
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn kernel_of_rank_one_row() {
        let rows = vec![vec![q(1), q(2), q(3)]];
        let k = rational_kernel(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(dot(&rows[0], v).is_zero());
        }
    }

    #[test]
    fn lll_finds_short_vector() {
        let b = vec![
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(31)],
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(29)],
        ];
        let r = lll_reduce(b);
        let norm = |v: &Vec<BigInt>| v.iter().map(|x| x * x).sum::<BigInt>();
        // shortest vectors are ±(1, -1, 2)
        assert_eq!(norm(&r[0]), BigInt::from(6));
    }

    #[test]
    fn primitive_clears_denominators() {
        let v = vec![BigRational::new(1.into(), 2.into()), BigRational::new((-3).into(), 4.into())];
        assert_eq!(primitive_integer(&v), vec![BigInt::from(2), BigInt::from(-3)]);
    }
}
