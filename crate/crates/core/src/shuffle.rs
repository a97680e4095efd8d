//! (p,q)-shuffles viewed as monotone lattice paths, their step
//! classification, corner flips, and the ladder maps between shuffle sets.
//!
//! A shuffle is stored with both endpoints, `s = (s_0, ..., s_{q+1})` with
//! `0 = s_0 <= s_1 <= ... <= s_q <= s_{q+1} = p`, and every formula indexes it
//! that way.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shuffle {
    p: usize,
    q: usize,
    s: Vec<usize>,
}

impl Shuffle {
    pub fn new(p: usize, q: usize, s: Vec<usize>) -> Result<Shuffle> {
        if s.len() != q + 2 {
            return Err(Error::domain(format!(
                "a ({p},{q})-shuffle has {} entries, got {}",
                q + 2,
                s.len()
            )));
        }
        if s[0] != 0 || s[q + 1] != p || s.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::domain(format!("{s:?} is not a ({p},{q})-shuffle")));
        }
        Ok(Shuffle { p, q, s })
    }

    /// Infers `p` and `q` from the entries.
    pub fn from_entries(s: Vec<usize>) -> Result<Shuffle> {
        if s.len() < 2 {
            return Err(Error::domain("a shuffle has at least two entries"));
        }
        let q = s.len() - 2;
        let p = *s.last().unwrap();
        Shuffle::new(p, q, s)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn entries(&self) -> &[usize] {
        &self.s
    }

    pub fn get(&self, k: usize) -> usize {
        self.s[k]
    }

    /// Exponent of `sgn(s) = (-1)^{s_1 + ... + s_q}`.
    pub fn sign_exponent(&self) -> usize {
        self.s[1..=self.q].iter().sum()
    }

    pub fn sgn(&self) -> i64 {
        if self.sign_exponent().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Partition of `{0, ..., p+q}` by the local shape of the lattice path.
    pub fn classify(&self) -> StepClassification {
        let (p, q, s) = (self.p, self.q, &self.s);
        let top = p + q;
        let mut c = StepClassification::default();
        for k in 0..=q {
            for i in (s[k] + k + 1)..(s[k + 1] + k) {
                if i > 0 && i < top {
                    c.right.insert(i);
                }
            }
        }
        if s[0] < s[1] {
            c.right.insert(0);
        }
        if s[q] < s[q + 1] {
            c.right.insert(top);
        } else {
            c.up.insert(top);
        }
        for k in 0..=q {
            let i = s[k] + k;
            if s[k] == s[k + 1] && i < top {
                c.up.insert(i);
            }
            if s[k] < s[k + 1] && i > 0 && i < top {
                c.corner_up.insert(i);
            }
        }
        for k in 1..=q + 1 {
            if s[k - 1] < s[k] {
                let i = s[k] + k - 1;
                if i > 0 && i < top {
                    c.corner_down.insert(i);
                }
            }
        }
        c
    }

    /// `α_i`: flips the corner at a `corner_down` index `i = s_k + k - 1`.
    pub fn flip_alpha(&self, i: usize) -> Result<Shuffle> {
        if !self.classify().corner_down.contains(&i) {
            return Err(Error::domain(format!("{i} is not a down-corner of {self}")));
        }
        let k = (1..=self.q + 1)
            .find(|&k| self.s[k - 1] < self.s[k] && self.s[k] + k - 1 == i)
            .expect("corner index");
        let mut s = self.s.clone();
        s[k] -= 1;
        Shuffle::new(self.p, self.q, s)
    }

    /// `β_j`: flips the corner at an `corner_up` index `j = s_l + l`.
    pub fn flip_beta(&self, j: usize) -> Result<Shuffle> {
        if !self.classify().corner_up.contains(&j) {
            return Err(Error::domain(format!("{j} is not an up-corner of {self}")));
        }
        let l = (0..=self.q)
            .find(|&l| self.s[l] < self.s[l + 1] && self.s[l] + l == j)
            .expect("corner index");
        let mut s = self.s.clone();
        s[l] += 1;
        Shuffle::new(self.p, self.q, s)
    }

    /// `λ_k: S(p-1, q) -> S(p, q)`, adding one to the entries after position `k`.
    pub fn ladder_lambda(&self, k: usize) -> Result<Shuffle> {
        if k > self.q {
            return Err(Error::domain(format!("λ_{k} needs k <= {}", self.q)));
        }
        let mut s = self.s.clone();
        for x in s.iter_mut().skip(k + 1) {
            *x += 1;
        }
        Shuffle::new(self.p + 1, self.q, s)
    }

    /// `ν_k: S(p, q-1) -> S(p, q)`, doubling the entry at position `k`.
    ///
    /// `self` plays the role of `t ∈ S(p, q-1)`, so `k` ranges over `0..=q_t + 1`.
    pub fn ladder_nu(&self, k: usize) -> Result<Shuffle> {
        if k > self.q + 1 {
            return Err(Error::domain(format!("ν_{k} needs k <= {}", self.q + 1)));
        }
        let mut s = self.s.clone();
        s.insert(k, self.s[k]);
        Shuffle::new(self.p, self.q + 1, s)
    }

    /// Membership in `Ŝ(p, q)`: strictly increasing after the first entry.
    pub fn is_hat(&self) -> bool {
        self.s[1..].windows(2).all(|w| w[0] < w[1])
    }
}

impl fmt::Display for Shuffle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.s.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The four step types of a lattice path.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StepClassification {
    pub right: BTreeSet<usize>,
    pub up: BTreeSet<usize>,
    /// Indices `i = s_k + k - 1` where the path turns from horizontal to vertical.
    pub corner_down: BTreeSet<usize>,
    /// Indices `i = s_k + k` where the path turns from vertical to horizontal.
    pub corner_up: BTreeSet<usize>,
}

impl StepClassification {
    /// True when the four sets are disjoint and cover `{0, ..., top}`.
    pub fn is_partition_of(&self, top: usize) -> bool {
        let total = self.right.len() + self.up.len() + self.corner_down.len() + self.corner_up.len();
        let mut union = BTreeSet::new();
        for set in [&self.right, &self.up, &self.corner_down, &self.corner_up] {
            union.extend(set.iter().copied());
        }
        total == top + 1 && union.len() == top + 1 && union.iter().all(|&i| i <= top)
    }
}

/// All of `S(p, q)` in lexicographic order.
pub fn enumerate_shuffles(p: usize, q: usize) -> Vec<Shuffle> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; q + 2];
    cur[q + 1] = p;
    fill(p, q, 1, 0, &mut cur, &mut out, false);
    out
}

/// All of `Ŝ(p, q)`: `0 = s_0 <= s_1 < s_2 < ... < s_{q+1} = p`.
pub fn enumerate_hat_shuffles(p: usize, q: usize) -> Vec<Shuffle> {
    if q > p {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; q + 2];
    cur[q + 1] = p;
    fill(p, q, 1, 0, &mut cur, &mut out, true);
    out
}

fn fill(
    p: usize,
    q: usize,
    pos: usize,
    min: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Shuffle>,
    strict: bool,
) {
    if pos == q + 1 {
        // last free entry must also respect strictness against p
        if strict && q >= 1 && cur[q] >= p {
            return;
        }
        out.push(Shuffle {
            p,
            q,
            s: cur.clone(),
        });
        return;
    }
    for v in min..=p {
        cur[pos] = v;
        let next_min = if strict { v + 1 } else { v };
        fill(p, q, pos + 1, next_min, cur, out, strict);
    }
}

/// `ε(k)`: 0 for `k ≡ 1, 2 (mod 4)`, 1 for `k ≡ 0, 3 (mod 4)`.
pub fn epsilon_k(k: usize) -> usize {
    match k % 4 {
        1 | 2 => 0,
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sh(s: &[usize]) -> Shuffle {
        Shuffle::from_entries(s.to_vec()).unwrap()
    }

    #[test]
    fn s21() {
        let all: Vec<Vec<usize>> = enumerate_shuffles(2, 1)
            .into_iter()
            .map(|s| s.entries().to_vec())
            .collect();
        assert_eq!(all, vec![vec![0, 0, 2], vec![0, 1, 2], vec![0, 2, 2]]);
    }

    #[test]
    fn q_zero_singleton() {
        assert_eq!(enumerate_shuffles(4, 0), vec![sh(&[0, 4])]);
    }

    #[test]
    fn worked_classification() {
        let c = sh(&[0, 2, 3, 3, 6]).classify();
        assert_eq!(c.right, [0, 1, 7, 8, 9].into_iter().collect());
        assert_eq!(c.up, [5].into_iter().collect());
        assert_eq!(c.corner_down, [2, 4].into_iter().collect());
        assert_eq!(c.corner_up, [3, 6].into_iter().collect());
    }

    #[test]
    fn horizontal_path() {
        let c = sh(&[0, 4]).classify();
        assert_eq!(c.right, (0..=4).collect());
        assert!(c.up.is_empty() && c.corner_down.is_empty() && c.corner_up.is_empty());
    }

    #[test]
    fn signs() {
        assert_eq!(sh(&[0, 0, 0, 5]).sgn(), 1);
        assert_eq!(sh(&[0, 2, 3, 3, 6]).sgn(), 1);
        assert_eq!(sh(&[0, 1, 2]).sgn(), -1);
    }

    #[test]
    fn flips() {
        let s = sh(&[0, 2, 3, 3, 6]);
        assert_eq!(s.flip_alpha(2).unwrap(), sh(&[0, 1, 3, 3, 6]));
        assert_eq!(s.flip_beta(3).unwrap(), sh(&[0, 3, 3, 3, 6]));
        assert!(s.flip_alpha(3).is_err());
        assert!(s.flip_beta(2).is_err());
    }

    #[test]
    fn ladders() {
        // λ_q on S(p-1,q) only bumps the final endpoint
        let s = sh(&[0, 1, 2]);
        assert_eq!(s.ladder_lambda(1).unwrap(), sh(&[0, 1, 3]));
        assert_eq!(s.ladder_lambda(0).unwrap(), sh(&[0, 2, 3]));
        assert_eq!(s.ladder_nu(1).unwrap(), sh(&[0, 1, 1, 2]));
        assert!(s.ladder_lambda(2).is_err());
        assert!(s.ladder_nu(3).is_err());
    }

    #[test]
    fn hat_shuffles() {
        assert_eq!(enumerate_hat_shuffles(3, 3), vec![sh(&[0, 0, 1, 2, 3])]);
        assert_eq!(
            enumerate_hat_shuffles(3, 1),
            vec![sh(&[0, 0, 3]), sh(&[0, 1, 3]), sh(&[0, 2, 3])]
        );
        assert!(enumerate_hat_shuffles(1, 2).is_empty());
    }

    #[test]
    fn epsilon_values() {
        assert_eq!(epsilon_k(1), 0);
        assert_eq!(epsilon_k(2), 0);
        assert_eq!(epsilon_k(3), 1);
        assert_eq!(epsilon_k(4), 1);
    }

    #[test]
    fn malformed() {
        assert!(Shuffle::new(2, 1, vec![0, 3, 2]).is_err());
        assert!(Shuffle::new(2, 1, vec![1, 1, 2]).is_err());
        assert!(Shuffle::new(2, 1, vec![0, 2]).is_err());
    }
}
