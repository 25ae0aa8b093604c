//! Submodule spans over Z/nZ.
//!
//! Generation questions over full modular scalar sets reduce to linear
//! algebra: the additive-and-action closure of a set B inside (Z/nZ)^d is the
//! submodule it generates. Membership is decided componentwise modulo each
//! prime power q = p^e dividing n (CRT), keeping the generators in a
//! Howell-style echelon: one pivot row per column, pivots normalized to p^k,
//! and for every pivot row its annihilator tail p^(e-k) * row inserted as a
//! generator of its own. The exhaustive closure engine cross-checks this on
//! small instances.

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Multiplicative inverse of `a` modulo `q` for `a` coprime to `q`.
fn inv_mod(a: u64, q: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (q as i128, (a % q) as i128);
    while new_r != 0 {
        let quotient = r / new_r;
        (t, new_t) = (new_t, t - quotient * new_t);
        (r, new_r) = (new_r, r - quotient * new_r);
    }
    debug_assert_eq!(r, 1, "not invertible");
    (((t % q as i128) + q as i128) % q as i128) as u64
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0u32;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Echelon of generators modulo one prime power q = p^e.
#[derive(Debug, Clone)]
struct PrimePowerSpan {
    p: u64,
    e: u32,
    q: u64,
    dim: usize,
    /// One row per pivot column; row[pivot] = p^k, columns left of the pivot
    /// are zero.
    rows: Vec<Vec<u64>>,
    pivot_of_row: Vec<usize>,
    row_at_col: Vec<Option<usize>>,
}

impl PrimePowerSpan {
    fn new(p: u64, e: u32, dim: usize) -> Self {
        let q = p.pow(e);
        PrimePowerSpan { p, e, q, dim, rows: Vec::new(), pivot_of_row: Vec::new(), row_at_col: vec![None; dim] }
    }

    fn valuation(&self, mut x: u64) -> u32 {
        debug_assert!(x != 0);
        let mut v = 0;
        while x % self.p == 0 {
            x /= self.p;
            v += 1;
        }
        v
    }

    fn sub_scaled(&self, v: &mut [u64], row: &[u64], factor: u64) {
        let q = self.q as u128;
        let f = factor as u128;
        for (x, r) in v.iter_mut().zip(row) {
            let sub = (f * *r as u128) % q;
            *x = ((*x as u128 + q - sub) % q) as u64;
        }
    }

    /// Reduce `v` against the stored rows, left to right. Returns the first
    /// column whose entry could not be eliminated, if any.
    fn reduce(&self, v: &mut [u64]) -> Option<usize> {
        for c in 0..self.dim {
            if v[c] == 0 {
                continue;
            }
            match self.row_at_col[c] {
                Some(ri) => {
                    let pivot = self.rows[ri][c];
                    let pk = self.valuation(pivot);
                    let vk = self.valuation(v[c]);
                    if vk >= pk {
                        // v[c] = factor * p^k with factor = v[c] / p^k.
                        let factor = v[c] / pivot; // pivot is exactly p^k
                        self.sub_scaled(v, &self.rows[ri].clone(), factor);
                        debug_assert_eq!(v[c], 0);
                    } else {
                        return Some(c);
                    }
                }
                None => return Some(c),
            }
        }
        None
    }

    fn contains(&self, v: &[u64]) -> bool {
        let mut w: Vec<u64> = v.iter().map(|x| x % self.q).collect();
        self.reduce(&mut w).is_none()
    }

    /// Insert `v` as a generator. Returns true if the span grew.
    fn insert(&mut self, v: &[u64]) -> bool {
        let mut queue: Vec<Vec<u64>> = vec![v.iter().map(|x| x % self.q).collect()];
        let mut grew = false;
        while let Some(mut w) = queue.pop() {
            let Some(c) = self.reduce(&mut w) else { continue };
            grew = true;
            // Normalize so w[c] = p^k exactly.
            let k = self.valuation(w[c]);
            let pk = self.p.pow(k);
            let unit = w[c] / pk;
            debug_assert_eq!(gcd(unit, self.p), 1);
            let unit_inv = inv_mod(unit, self.q);
            for x in w.iter_mut() {
                *x = ((*x as u128 * unit_inv as u128) % self.q as u128) as u64;
            }
            debug_assert_eq!(w[c], pk);
            match self.row_at_col[c] {
                None => {
                    // The annihilator tail p^(e-k) * w is a generator too.
                    if k > 0 {
                        let mult = self.p.pow(self.e - k);
                        let tail: Vec<u64> = w
                            .iter()
                            .map(|x| ((*x as u128 * mult as u128) % self.q as u128) as u64)
                            .collect();
                        if tail.iter().any(|&x| x != 0) {
                            queue.push(tail);
                        }
                    }
                    self.rows.push(w);
                    self.pivot_of_row.push(c);
                    self.row_at_col[c] = Some(self.rows.len() - 1);
                }
                Some(ri) => {
                    // Existing pivot has strictly larger valuation: swap,
                    // then re-insert the displaced row.
                    let old = std::mem::replace(&mut self.rows[ri], w);
                    debug_assert!(self.valuation(old[c]) > k);
                    queue.push(old);
                    // Re-queue the tail of the fresh pivot as well.
                    if k > 0 {
                        let mult = self.p.pow(self.e - k);
                        let tail: Vec<u64> = self.rows[ri]
                            .iter()
                            .map(|x| ((*x as u128 * mult as u128) % self.q as u128) as u64)
                            .collect();
                        if tail.iter().any(|&x| x != 0) {
                            queue.push(tail);
                        }
                    }
                }
            }
        }
        grew
    }
}

/// The submodule of (Z/nZ)^dim generated by the inserted vectors.
#[derive(Debug, Clone)]
pub struct ZnSpan {
    n: u64,
    dim: usize,
    components: Vec<PrimePowerSpan>,
}

impl ZnSpan {
    pub fn new(n: u64, dim: usize) -> ZnSpan {
        assert!(n >= 1);
        let components = factorize(n)
            .into_iter()
            .map(|(p, e)| PrimePowerSpan::new(p, e, dim))
            .collect();
        ZnSpan { n, dim, components }
    }

    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut grew = false;
        for c in &mut self.components {
            grew |= c.insert(v);
        }
        grew
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.dim);
        if self.n == 1 {
            return true;
        }
        self.components.iter().all(|c| c.contains(v))
    }

    /// Whether the span is all of (Z/nZ)^dim.
    pub fn is_full(&self) -> bool {
        if self.n == 1 {
            return true;
        }
        (0..self.dim).all(|i| {
            let mut unit = vec![0u64; self.dim];
            unit[i] = 1;
            self.contains(&unit)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Oracle: the additive closure of the generators and their Zn-multiples.
    fn closure_oracle(n: u64, dim: usize, gens: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
        let mut set: BTreeSet<Vec<u64>> = BTreeSet::new();
        set.insert(vec![0; dim]);
        for g in gens {
            for a in 0..n {
                let scaled: Vec<u64> = g.iter().map(|x| (x * a) % n).collect();
                set.insert(scaled);
            }
        }
        loop {
            let mut new = Vec::new();
            for a in &set {
                for b in &set {
                    let sum: Vec<u64> = a.iter().zip(b).map(|(x, y)| (x + y) % n).collect();
                    if !set.contains(&sum) {
                        new.push(sum);
                    }
                }
            }
            if new.is_empty() {
                break;
            }
            set.extend(new);
        }
        set
    }

    fn check_against_oracle(n: u64, dim: usize, gens: &[Vec<u64>]) {
        let oracle = closure_oracle(n, dim, gens);
        let mut span = ZnSpan::new(n, dim);
        for g in gens {
            span.insert(g);
        }
        // Every vector of the cube agrees with the oracle.
        let mut v = vec![0u64; dim];
        loop {
            assert_eq!(
                span.contains(&v),
                oracle.contains(&v),
                "membership mismatch for {v:?} over Z{n} with gens {gens:?}"
            );
            // odometer
            let mut i = dim;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                v[i] += 1;
                if v[i] < n {
                    break;
                }
                v[i] = 0;
            }
        }
    }

    #[test]
    fn z4_pair_with_torsion() {
        // <(2,1)> over Z4 contains (0,2) = 2*(2,1) - (4,0); the tail rows
        // matter here.
        check_against_oracle(4, 2, &[vec![2, 1]]);
    }

    #[test]
    fn z12_mixed_generators() {
        check_against_oracle(12, 2, &[vec![4, 6]]);
        check_against_oracle(12, 2, &[vec![3, 0], vec![0, 8]]);
        check_against_oracle(12, 3, &[vec![2, 4, 6], vec![6, 0, 3]]);
    }

    #[test]
    fn z8_torsion_chain() {
        check_against_oracle(8, 2, &[vec![2, 1], vec![4, 4]]);
        check_against_oracle(8, 3, &[vec![4, 2, 1]]);
    }

    #[test]
    fn full_span_detection() {
        let mut span = ZnSpan::new(6, 2);
        span.insert(&[1, 0]);
        assert!(!span.is_full());
        span.insert(&[0, 5]);
        assert!(span.is_full());
    }

    #[test]
    fn unit_vectors_fill_polynomials() {
        let mut span = ZnSpan::new(12, 11);
        for i in 0..11 {
            let mut unit = vec![0u64; 11];
            unit[i] = 1;
            span.insert(&unit);
        }
        assert!(span.is_full());
    }

    #[test]
    fn proper_submodule_misses_units() {
        let mut span = ZnSpan::new(6, 4);
        span.insert(&[1, 0, 0, 0]);
        span.insert(&[0, 0, 1, 0]);
        let mut unit = vec![0u64; 4];
        unit[1] = 1;
        assert!(!span.contains(&unit));
        assert!(span.contains(&[5, 0, 3, 0]));
    }
}
