//! Smith and Hermite normal forms over the integers.
//!
//! Hermite convention (used by every canonical form in the crate): row-style
//! echelon form, each pivot positive, entries above a pivot reduced into
//! `[0, pivot)`, zero rows at the bottom.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntegerMatrix;

/// Result of [`smith_normal_form`]: `u * a * v == s`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries of `s`, in order. Each divides the next.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.s.rows().min(self.s.cols());
        (0..k)
            .map(|i| self.s[(i, i)].clone())
            .take_while(|d| !d.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Result of [`hermite_normal_form`]: `u * a == h`.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: IntegerMatrix,
    pub u: IntegerMatrix,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        (0..self.h.rows())
            .take_while(|&i| self.h.row(i).iter().any(|x| !x.is_zero()))
            .count()
    }

    /// Column index of the pivot of each nonzero row.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.rank())
            .map(|i| {
                self.h
                    .row(i)
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("nonzero row")
            })
            .collect()
    }

    /// The nonzero rows of `h`.
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        (0..self.rank()).map(|i| self.h.row(i).to_vec()).collect()
    }
}

/// Bezout coefficients `(g, x, y)` with `x*a + y*b == g` and `g == gcd(a, b) >= 0`.
pub(crate) fn bezout(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
    if g.sign() == Sign::Minus {
        g = -g;
        x = -x;
        y = -y;
    }
    debug_assert_eq!(&x * a + &y * b, g);
    (g, x, y)
}

pub fn smith_normal_form(a: &IntegerMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);

    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !s[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let (p, q) = (s[(t, t)].clone(), s[(i, t)].clone());
                if (&q % &p).is_zero() {
                    let f = -(&q / &p);
                    s.add_row_multiple(i, t, &f);
                    u.add_row_multiple(i, t, &f);
                } else {
                    let (g, x, y) = bezout(&p, &q);
                    let (z, w) = (-(&q / &g), &p / &g);
                    s.combine_rows(t, i, [&x, &y, &z, &w]);
                    u.combine_rows(t, i, [&x, &y, &z, &w]);
                }
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let (p, q) = (s[(t, t)].clone(), s[(t, j)].clone());
                if (&q % &p).is_zero() {
                    let f = -(&q / &p);
                    s.add_col_multiple(j, t, &f);
                    v.add_col_multiple(j, t, &f);
                } else {
                    let (g, x, y) = bezout(&p, &q);
                    let (z, w) = (-(&q / &g), &p / &g);
                    s.combine_cols(t, j, [&x, &y, &z, &w]);
                    v.combine_cols(t, j, [&x, &y, &z, &w]);
                    clean = false;
                }
            }
            if !clean || (t + 1..m).any(|i| !s[(i, t)].is_zero()) {
                continue;
            }
            // divisibility condition on the trailing block
            let p = s[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !(&s[(i, j)] % &p).is_zero()));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, s, v }
}

pub fn hermite_normal_form(a: &IntegerMatrix) -> HermiteForm {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        for i in r + 1..m {
            if h[(i, c)].is_zero() {
                continue;
            }
            if h[(r, c)].is_zero() {
                h.swap_rows(r, i);
                u.swap_rows(r, i);
                continue;
            }
            let (p, q) = (h[(r, c)].clone(), h[(i, c)].clone());
            let (g, x, y) = bezout(&p, &q);
            let (z, w) = (-(&q / &g), &p / &g);
            h.combine_rows(r, i, [&x, &y, &z, &w]);
            u.combine_rows(r, i, [&x, &y, &z, &w]);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        let p = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&p);
            if !q.is_zero() {
                let f = -q;
                h.add_row_multiple(i, r, &f);
                u.add_row_multiple(i, r, &f);
            }
        }
        r += 1;
    }
    HermiteForm { h, u }
}

/// Canonical Hermite basis (nonzero rows) of the lattice spanned by `rows`.
pub fn lattice_basis(dim: usize, rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return Vec::new();
    }
    hermite_normal_form(&IntegerMatrix::from_rows(dim, rows.to_vec())).basis()
}

pub fn rank(a: &IntegerMatrix) -> usize {
    hermite_normal_form(a).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::int_vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn is_diagonal_chain(s: &IntegerMatrix) -> bool {
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                if i != j && !s[(i, j)].is_zero() {
                    return false;
                }
            }
        }
        let k = s.rows().min(s.cols());
        let d: Vec<BigInt> = (0..k).map(|i| s[(i, i)].clone()).collect();
        if d.iter().any(|x| x.is_negative()) {
            return false;
        }
        d.windows(2).all(|w| {
            if w[0].is_zero() {
                w[1].is_zero()
            } else {
                (&w[1] % &w[0]).is_zero()
            }
        })
    }

    fn check_smith(a: &IntegerMatrix) -> SmithForm {
        let f = smith_normal_form(a);
        assert_eq!(f.u.mul(a).mul(&f.v), f.s, "U*A*V != S for {a:?}");
        assert!(f.u.is_unimodular() && f.v.is_unimodular());
        assert!(is_diagonal_chain(&f.s), "not a Smith form: {:?}", f.s);
        f
    }

    fn check_hermite(a: &IntegerMatrix) -> HermiteForm {
        let f = hermite_normal_form(a);
        assert_eq!(f.u.mul(a), f.h);
        assert!(f.u.is_unimodular());
        let pivots = f.pivots();
        assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        for (r, &c) in pivots.iter().enumerate() {
            let p = &f.h[(r, c)];
            assert!(p.is_positive());
            for i in 0..r {
                assert!(!f.h[(i, c)].is_negative() && &f.h[(i, c)] < p);
            }
        }
        f
    }

    #[test]
    fn smith_identity() {
        let f = check_smith(&IntegerMatrix::identity(2));
        assert_eq!(f.s, IntegerMatrix::identity(2));
        assert_eq!(f.u, IntegerMatrix::identity(2));
        assert_eq!(f.v, IntegerMatrix::identity(2));
    }

    #[test]
    fn smith_examples() {
        let a = IntegerMatrix::from_i64_rows(3, &[&[1, 0, 0], &[1, 2, 0], &[0, 1, 2]]);
        assert_eq!(check_smith(&a).invariant_factors(), int_vec(&[1, 1, 4]));
        let b = IntegerMatrix::from_i64_rows(2, &[&[2, 0], &[0, 3]]);
        assert_eq!(check_smith(&b).invariant_factors(), int_vec(&[1, 6]));
    }

    #[test]
    fn smith_degenerate_shapes() {
        check_smith(&IntegerMatrix::zeros(0, 3));
        check_smith(&IntegerMatrix::zeros(2, 0));
        let f = check_smith(&IntegerMatrix::zeros(2, 2));
        assert!(f.invariant_factors().is_empty());
        let row = IntegerMatrix::from_i64_rows(3, &[&[4, 6, 10]]);
        assert_eq!(check_smith(&row).invariant_factors(), int_vec(&[2]));
    }

    #[test]
    fn hermite_examples() {
        assert_eq!(check_hermite(&IntegerMatrix::identity(3)).h, IntegerMatrix::identity(3));
        let a = IntegerMatrix::from_i64_rows(2, &[&[2, 4], &[2, 2]]);
        assert_eq!(
            check_hermite(&a).h,
            IntegerMatrix::from_i64_rows(2, &[&[2, 0], &[0, 2]])
        );
        let single = IntegerMatrix::from_i64_rows(2, &[&[2, 4]]);
        assert_eq!(check_hermite(&single).h, single);
    }

    #[test]
    fn hermite_zero_rows_last() {
        let a = IntegerMatrix::from_i64_rows(2, &[&[0, 0], &[3, 6], &[-1, -2]]);
        let f = check_hermite(&a);
        assert_eq!(f.rank(), 1);
        assert_eq!(f.basis(), vec![int_vec(&[1, 2])]);
    }

    #[test]
    fn random_forms_hold_their_postconditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = rng.gen_range(1..=5);
            let n = rng.gen_range(1..=5);
            let rows: Vec<Vec<BigInt>> = (0..m)
                .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect())
                .collect();
            let a = IntegerMatrix::from_rows(n, rows);
            check_smith(&a);
            check_hermite(&a);
        }
    }

    #[test]
    fn large_entries_do_not_overflow() {
        let big = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
        let a = IntegerMatrix::from_rows(
            2,
            vec![vec![big.clone(), BigInt::from(3)], vec![BigInt::from(5), big.clone()]],
        );
        check_smith(&a);
        check_hermite(&a);
    }
}
