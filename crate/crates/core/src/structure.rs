//! Companion matrices and the purely structural side of Perron–Frobenius
//! theory: irreducibility, primitivity and the index of imprimitivity,
//! decided on the zero pattern alone.

use std::collections::VecDeque;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::recurrence::Recurrence;

/// `k x k` matrix with ones on the superdiagonal and `c_0..c_{k-1}` in the
/// last row, so that `C A_n = A_{n+1}` for the state `A_n = (a_n, ..., a_{n+k-1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionMatrix {
    entries: Vec<Vec<Rational>>,
}

impl CompanionMatrix {
    pub fn new(rec: &Recurrence) -> Self {
        let k = rec.order();
        let mut entries = vec![vec![Rational::zero(); k]; k];
        for (i, row) in entries.iter_mut().enumerate().take(k - 1) {
            row[i + 1] = Rational::one();
        }
        entries[k - 1] = rec.coeffs().to_vec();
        CompanionMatrix { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn pattern(&self) -> BoolMatrix {
        let n = self.dim();
        let mut bm = BoolMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                bm.set(i, j, !self.entries[i][j].is_zero());
            }
        }
        bm
    }

    /// Exact `det(C - xI)` coefficients, lowest degree first, by cofactor
    /// expansion. Exponential in the dimension; meant for small checks.
    pub fn characteristic_poly_by_cofactors(&self) -> crate::poly::Poly {
        use crate::poly::Poly;
        let n = self.dim();
        let m: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = self.entries[i][j].clone();
                        if i == j {
                            Poly::new(vec![c, -Rational::one()])
                        } else {
                            Poly::new(vec![c])
                        }
                    })
                    .collect()
            })
            .collect();
        fn det(m: &[Vec<Poly>]) -> Poly {
            let n = m.len();
            if n == 1 {
                return m[0][0].clone();
            }
            let mut acc = Poly::zero();
            for (j, entry) in m[0].iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = entry * &det(&minor);
                acc = if j % 2 == 0 { &acc - &(&Poly::zero() - &term) } else { &acc - &term };
            }
            acc
        }
        det(&m)
    }
}

/// Square boolean adjacency matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    n: usize,
    bits: Vec<bool>,
}

impl BoolMatrix {
    pub fn new(n: usize) -> Self {
        BoolMatrix { n, bits: vec![false; n * n] }
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        BoolMatrix { n, bits: rows.concat() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.bits[i * self.n + j] = v;
    }

    pub fn all_true(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn mul(&self, rhs: &BoolMatrix) -> BoolMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = BoolMatrix::new(n);
        for i in 0..n {
            for l in 0..n {
                if !self.get(i, l) {
                    continue;
                }
                for j in 0..n {
                    if rhs.get(l, j) {
                        out.bits[i * n + j] = true;
                    }
                }
            }
        }
        out
    }

    fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.get(i, j))
    }

    fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(u) = queue.pop_front() {
            for v in self.successors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Strong connectivity of the digraph, by one reachability sweep per vertex.
    pub fn is_irreducible(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        (0..self.n).all(|v| self.reachable_from(v).iter().all(|&r| r))
    }

    /// Wielandt bound `(k-1)^2 + 1` on the primitivity exponent.
    pub fn wielandt_bound(&self) -> usize {
        (self.n - 1) * (self.n - 1) + 1
    }

    /// Frobenius test: some power `A^m` with `m` up to the Wielandt bound is
    /// entrywise true. Positivity of `A^m` persists for larger powers, so it is
    /// enough to inspect `A^m` for one `m` at or past the bound, reached by
    /// repeated squaring.
    pub fn is_primitive(&self) -> Result<bool> {
        if !self.is_irreducible() {
            return Err(Error::Reducible);
        }
        let bound = self.wielandt_bound();
        let mut power = self.clone();
        let mut m = 1;
        while m < bound {
            power = power.mul(&power);
            m *= 2;
        }
        Ok(power.all_true())
    }

    /// Smallest `m` with `A^m` entrywise true, by successive multiplication up
    /// to the Wielandt bound; `None` when the matrix is imprimitive.
    pub fn primitivity_exponent(&self) -> Result<Option<usize>> {
        if !self.is_irreducible() {
            return Err(Error::Reducible);
        }
        let mut power = self.clone();
        for m in 1..=self.wielandt_bound() {
            if power.all_true() {
                return Ok(Some(m));
            }
            power = power.mul(self);
        }
        Ok(None)
    }

    /// Period of the strongly connected digraph: the gcd of all closed-walk
    /// lengths, read off BFS levels from vertex 0 as the gcd of
    /// `level(u) + 1 - level(v)` over all edges `u -> v`.
    pub fn imprimitivity_index(&self) -> Result<usize> {
        if !self.is_irreducible() {
            return Err(Error::Reducible);
        }
        let mut level = vec![usize::MAX; self.n];
        level[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for v in self.successors(u) {
                if level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        let mut period = 0usize;
        for u in 0..self.n {
            for v in self.successors(u) {
                let diff = (level[u] + 1).abs_diff(level[v]);
                period = period.gcd(&diff);
            }
        }
        Ok(period)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn companion_of(coeffs: &[i64]) -> CompanionMatrix {
        CompanionMatrix::new(&Recurrence::from_ints(coeffs, &vec![1; coeffs.len()]).unwrap())
    }

    #[test]
    fn companion_layout() {
        let c = companion_of(&[1, 1]);
        assert_eq!(c.rows(), &[vec![int(0), int(1)], vec![int(1), int(1)]]);

        let c = companion_of(&[1, 0, 1, 0]);
        assert_eq!(c.rows()[3], vec![int(1), int(0), int(1), int(0)]);
        for i in 0..3 {
            assert_eq!(c.entry(i, i + 1), &int(1));
        }

        let cx = Recurrence::new(vec![ratio(-3, 10), ratio(31, 10)], vec![int(1), int(1)]).unwrap();
        let c = CompanionMatrix::new(&cx);
        assert_eq!(c.rows(), &[vec![int(0), int(1)], vec![ratio(-3, 10), ratio(31, 10)]]);
    }

    #[test]
    fn companion_characteristic_polynomial_is_signed_char_poly() {
        for coeffs in [vec![1, 1], vec![1, 1, 1], vec![1, 0, 1, 0], vec![2, 0, 3, 0, 1]] {
            let rec = Recurrence::from_ints(&coeffs, &vec![1; coeffs.len()]).unwrap();
            let k = rec.order();
            let got = CompanionMatrix::new(&rec).characteristic_poly_by_cofactors();
            let p = rec.char_poly();
            let want = if k % 2 == 0 { p } else { &crate::poly::Poly::zero() - &p };
            assert_eq!(got, want, "k = {k}");
        }
    }

    #[test]
    fn irreducibility() {
        assert!(companion_of(&[1, 1]).pattern().is_irreducible());
        assert!(companion_of(&[3, 0, 0, 0, 0]).pattern().is_irreducible());

        // last row has its only entry in column k: vertex 1 is unreachable.
        let mut bm = companion_of(&[1, 0, 1]).pattern();
        bm.set(2, 0, false);
        bm.set(2, 1, false);
        bm.set(2, 2, true);
        assert!(!bm.is_irreducible());
        assert_eq!(bm.is_primitive(), Err(Error::Reducible));
        assert_eq!(bm.imprimitivity_index(), Err(Error::Reducible));

        assert!(BoolMatrix::from_rows(&[vec![true]]).is_irreducible());
    }

    #[test]
    fn primitivity() {
        let fib = companion_of(&[1, 1]).pattern();
        assert!(fib.mul(&fib).all_true());
        assert_eq!(fib.is_primitive(), Ok(true));
        assert_eq!(fib.primitivity_exponent(), Ok(Some(2)));

        let split = companion_of(&[1, 0, 1, 0]).pattern();
        assert_eq!(split.is_primitive(), Ok(false));
        let mut power = split.clone();
        for _ in 1..=10 {
            assert!(!power.all_true());
            power = power.mul(&split);
        }

        let trib = companion_of(&[1, 1, 1]).pattern();
        assert_eq!(trib.is_primitive(), Ok(true));
        assert!(trib.primitivity_exponent().unwrap().unwrap() <= 5);
    }

    #[test]
    fn imprimitivity_indices() {
        assert_eq!(companion_of(&[1, 0, 1, 0]).pattern().imprimitivity_index(), Ok(2));
        assert_eq!(companion_of(&[1, 1]).pattern().imprimitivity_index(), Ok(1));
        assert_eq!(companion_of(&[1, 0, 0]).pattern().imprimitivity_index(), Ok(3));
        assert_eq!(BoolMatrix::from_rows(&[vec![true]]).imprimitivity_index(), Ok(1));
    }
}
