use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `x0^e0 * ... * xn^en`.
///
/// Ordered by graded reverse lexicographic order: higher total degree is
/// larger; at equal degree the monomial with the smaller exponent in the last
/// differing variable is larger (so `x0 > x1 > ... > xn`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn one(num_vars: usize) -> Self {
        Self { exps: vec![0; num_vars] }
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut exps = vec![0; num_vars];
        exps[i] = 1;
        Self { exps }
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps
            .len()
            .cmp(&other.exps.len())
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| {
                for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of `degree` in `num_vars` variables, ascending in grevlex.
pub fn monomial_basis(num_vars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; num_vars];
    fill(&mut out, &mut current, 0, degree);
    out.sort();
    out
}

fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 >= current.len() {
        if current.is_empty() {
            if remaining == 0 {
                out.push(Monomial::new(Vec::new()));
            }
            return;
        }
        let last = current.len() - 1;
        current[last] = remaining;
        out.push(Monomial::new(current.clone()));
        current[last] = 0;
        return;
    }
    for e in 0..=remaining {
        current[pos] = e;
        fill(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

/// `C(n, k)` as u128; panics on overflow.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
