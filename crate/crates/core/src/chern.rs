//! Numeric intersection theory on Fano threefolds with Picard group `Z h`.
//!
//! Classes are recorded as numbers: `c1 = c1_mult h`, `c2` by its degree
//! `c2 · h`, `c3` as a number. On a Fano threefold of index `i`, `c1(T_X) = i h`
//! and `χ(O_X) = 1` pins `c2(T_X) · h = 24 / i`.

use num_rational::Ratio;
use num_traits::ToPrimitive;

use crate::algebra::binomial;
use crate::error::{Error, Result};

type Q = Ratio<i128>;

/// Index and degree `h^3` of a Fano threefold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FanoNumerics {
    pub index: i64,
    pub degree: i64,
}

impl FanoNumerics {
    pub fn new(index: i64, degree: i64) -> Result<Self> {
        if !(1..=4).contains(&index) {
            return Err(Error::NonFano(format!("index {index} outside 1..=4")));
        }
        if degree < 1 {
            return Err(Error::InconsistentNumerics(format!("degree {degree}")));
        }
        Ok(Self { index, degree })
    }

    /// `c2(T_X) · h`, from `c1 c2 = 24 χ(O_X) = 24`.
    pub fn c2_h(&self) -> i64 {
        24 / self.index
    }

    /// Degree `h^2 · S` of a smooth anticanonical K3 section `S ∈ |i h|`.
    pub fn k3_degree(&self) -> i64 {
        self.index * self.degree
    }
}

/// Smooth complete intersection threefold `X ⊂ P^n` with its tangent Chern
/// classes `c(T_X) = 1 + c1 h + c2 h^2 + c3 h^3` (coefficients of powers of `h`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoCI {
    pub ambient_dim: usize,
    pub degrees: Vec<u32>,
    pub index: i64,
    pub degree: i64,
    pub chern: [i64; 4],
}

/// Chern classes of a Fano complete-intersection threefold via the
/// truncated series `(1 + h)^{n+1} / Π (1 + d_j h)`.
pub fn chern_ci(n: usize, degrees: &[u32]) -> Result<FanoCI> {
    if n < degrees.len() || n - degrees.len() != 3 {
        return Err(Error::Unsupported(format!(
            "{} equations in P^{n} do not cut a threefold",
            degrees.len()
        )));
    }
    if let Some(d) = degrees.iter().find(|&&d| d < 2) {
        return Err(Error::Unsupported(format!("hypersurface degree {d}; drop linear equations")));
    }
    let index = n as i64 + 1 - degrees.iter().map(|&d| d as i64).sum::<i64>();
    if index < 1 {
        return Err(Error::NonFano(format!("index {index} for degrees {degrees:?} in P^{n}")));
    }
    let mut series: [i64; 4] = std::array::from_fn(|k| binomial(n as u64 + 1, k as u64) as i64);
    for &d in degrees {
        // multiply by 1 / (1 + d h) = Σ (-d)^k h^k
        let mut out = [0i64; 4];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut pow = 1i64;
            for j in (0..=k).rev() {
                *slot += series[j] * pow;
                pow *= -(d as i64);
            }
        }
        series = out;
    }
    let degree = degrees.iter().map(|&d| d as i64).product();
    let x = FanoCI {
        ambient_dim: n,
        degrees: degrees.to_vec(),
        index,
        degree,
        chern: series,
    };
    debug_assert_eq!(x.chern[1], index);
    if x.chi_structure_sheaf()? != 1 || x.koszul_chi_structure_sheaf() != 1 {
        return Err(Error::InconsistentNumerics(format!("χ(O_X) != 1 for {degrees:?} in P^{n}")));
    }
    Ok(x)
}

impl FanoCI {
    pub fn numerics(&self) -> FanoNumerics {
        FanoNumerics {
            index: self.index,
            degree: self.degree,
        }
    }

    /// `c2(T_X) · h`.
    pub fn c2_h(&self) -> i64 {
        self.chern[2] * self.degree
    }

    /// Topological Euler characteristic `c3(T_X)`.
    pub fn euler_number(&self) -> i64 {
        self.chern[3] * self.degree
    }

    /// `χ(O_X) = c1 c2 / 24` (Todd class in degree 3).
    pub fn chi_structure_sheaf(&self) -> Result<i64> {
        let c1c2 = self.chern[1] * self.chern[2] * self.degree;
        if c1c2 % 24 != 0 {
            return Err(Error::InconsistentNumerics(format!("c1 c2 = {c1c2} not divisible by 24")));
        }
        Ok(c1c2 / 24)
    }

    /// `χ(O_X)` from the Koszul resolution:
    /// `Σ_{S ⊆ degrees} (-1)^{|S|} χ(O_{P^n}(-Σ_S d))`.
    pub fn koszul_chi_structure_sheaf(&self) -> i64 {
        let r = self.degrees.len();
        (0..1usize << r)
            .map(|mask| {
                let t: i64 = (0..r)
                    .filter(|j| mask & (1 << j) != 0)
                    .map(|j| self.degrees[j] as i64)
                    .sum();
                let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                sign * chi_projective_space(self.ambient_dim, -t)
            })
            .sum()
    }
}

/// `χ(O_{P^n}(t)) = (t+1)(t+2)...(t+n) / n!` for every integer `t`.
pub fn chi_projective_space(n: usize, t: i64) -> i64 {
    let mut acc = Q::from_integer(1);
    for k in 1..=n as i128 {
        acc = acc * Q::from_integer(t as i128 + k) / Q::from_integer(k);
    }
    debug_assert!(acc.is_integer());
    acc.to_integer() as i64
}

/// Rank and Chern numbers of a sheaf on a Picard-rank-one threefold (or on
/// its K3 section, where `c2_deg` is the number `c2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BundleNumerics {
    pub rank: i64,
    pub c1_mult: i64,
    pub c2_deg: i64,
}

impl BundleNumerics {
    pub fn new(rank: i64, c1_mult: i64, c2_deg: i64) -> Result<Self> {
        if rank < 1 {
            return Err(Error::InconsistentNumerics(format!("rank {rank}")));
        }
        Ok(Self { rank, c1_mult, c2_deg })
    }

    /// `Δ · h = 2 r c2 · h - (r - 1) c1^2 · h` against a surface or threefold
    /// whose `h^top` is `degree`.
    pub fn discriminant(&self, degree: i64) -> i64 {
        2 * self.rank * self.c2_deg - (self.rank - 1) * self.c1_mult * self.c1_mult * degree
    }
}

/// `dim M_X = ½ i (Δ · h) + 1 - r^2`.
pub fn moduli_dim_eq1(x: &FanoNumerics, b: &BundleNumerics) -> Result<i64> {
    let twice = x.index * b.discriminant(x.degree);
    if twice % 2 != 0 {
        return Err(Error::InconsistentNumerics(format!("½ · {twice} is not an integer")));
    }
    Ok(twice / 2 + 1 - b.rank * b.rank)
}

/// `2 r c2 - (r - 1) c1^2 - 2(r^2 - 1)`: dimension of the moduli space of
/// stable sheaves on a K3 surface with `h^2 = k3_degree`.
pub fn mukai_dim(k3_degree: i64, b: &BundleNumerics) -> Result<i64> {
    let d = b.discriminant(k3_degree) - 2 * (b.rank * b.rank - 1);
    if d % 2 != 0 || d < 0 {
        return Err(Error::InconsistentNumerics(format!("Mukai dimension {d}")));
    }
    Ok(d)
}

/// Chern character `(rank, ch1, ch2 · h, ch3)` with `ch1` a multiple of `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChernCharacter {
    pub rank: Q,
    pub ch1: Q,
    pub ch2_h: Q,
    pub ch3: Q,
}

impl ChernCharacter {
    /// From rank and Chern numbers on a threefold of degree `degree`, with
    /// `c3` the number `c3(E)`.
    pub fn from_chern(b: &BundleNumerics, c3: i64, degree: i64) -> Self {
        let (r, c1, c2) = (b.rank as i128, b.c1_mult as i128, b.c2_deg as i128);
        let d = degree as i128;
        Self {
            rank: Q::from_integer(r),
            ch1: Q::from_integer(c1),
            ch2_h: Q::new(c1 * c1 * d - 2 * c2, 2),
            ch3: Q::new(c1 * c1 * c1 * d - 3 * c1 * c2 + 3 * c3 as i128, 6),
        }
    }

    pub fn dual(&self) -> Self {
        Self {
            rank: self.rank,
            ch1: -self.ch1,
            ch2_h: self.ch2_h,
            ch3: -self.ch3,
        }
    }

    pub fn tensor(&self, other: &Self, degree: i64) -> Self {
        let d = Q::from_integer(degree as i128);
        Self {
            rank: self.rank * other.rank,
            ch1: self.rank * other.ch1 + other.rank * self.ch1,
            ch2_h: self.rank * other.ch2_h + other.rank * self.ch2_h + self.ch1 * other.ch1 * d,
            ch3: self.rank * other.ch3
                + other.rank * self.ch3
                + self.ch1 * other.ch2_h
                + other.ch1 * self.ch2_h,
        }
    }

    /// Hirzebruch–Riemann–Roch: `∫ ch · td(X)` with `td1 = i h / 2`,
    /// `td2 = (c1^2 + c2) / 12` and `td3 = χ(O_X) = 1`.
    pub fn euler_characteristic(&self, x: &FanoNumerics) -> Result<i64> {
        let i = Q::from_integer(x.index as i128);
        let deg = Q::from_integer(x.degree as i128);
        let td2_h = (i * i * deg + Q::from_integer(x.c2_h() as i128)) / Q::from_integer(12);
        let chi = self.rank + self.ch1 * td2_h + self.ch2_h * i / Q::from_integer(2) + self.ch3;
        if !chi.is_integer() {
            return Err(Error::InconsistentNumerics(format!("χ = {chi} is not an integer")));
        }
        chi.to_integer()
            .to_i64()
            .ok_or_else(|| Error::InconsistentNumerics("χ overflows".into()))
    }
}

/// `χ(End E)` by HRR applied to `ch(E) ch(E^*)`.
pub fn chi_end(x: &FanoNumerics, b: &BundleNumerics) -> Result<i64> {
    // c3(E) cancels in End E
    let ch = ChernCharacter::from_chern(b, 0, x.degree);
    ch.tensor(&ch.dual(), x.degree).euler_characteristic(x)
}

/// `χ(E)` by HRR.
pub fn chi_bundle(x: &FanoNumerics, b: &BundleNumerics, c3: i64) -> Result<i64> {
    ChernCharacter::from_chern(b, c3, x.degree).euler_characteristic(x)
}

/// Rank-`r` bundles on a Fano threefold obtained from curves of a fixed
/// degree and genus via the Serre construction, `c2 = [C]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub name: String,
    pub threefold: FanoNumerics,
    pub rank: i64,
    pub c1_mult: i64,
    pub curve_degree: i64,
    pub curve_genus: i64,
}

impl Family {
    pub fn bundle_on_x(&self) -> Result<BundleNumerics> {
        BundleNumerics::new(self.rank, self.c1_mult, self.curve_degree)
    }

    /// Serre construction condition `K_C = (K_X ⊗ det E)|_C`, i.e.
    /// `2g - 2 = (c1 - i) deg C`.
    pub fn serre_consistent(&self) -> bool {
        2 * self.curve_genus - 2 == (self.c1_mult - self.threefold.index) * self.curve_degree
    }

    /// Restriction to `S ∈ |-K_X|`: `c2 = C · S = i · deg C`.
    pub fn bundle_on_s(&self) -> Result<BundleNumerics> {
        BundleNumerics::new(self.rank, self.c1_mult, self.threefold.index * self.curve_degree)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LagrangianLedger {
    pub dim_mx: i64,
    pub dim_ms: i64,
    /// `1 - χ(End E)` from HRR, to compare with `dim_mx`.
    pub one_minus_chi_end: i64,
    pub is_half: bool,
}

pub fn lagrangian_ledger(family: &Family) -> Result<LagrangianLedger> {
    let x = &family.threefold;
    let dim_mx = moduli_dim_eq1(x, &family.bundle_on_x()?)?;
    let dim_ms = mukai_dim(x.k3_degree(), &family.bundle_on_s()?)?;
    let one_minus_chi_end = 1 - chi_end(x, &family.bundle_on_x()?)?;
    Ok(LagrangianLedger {
        dim_mx,
        dim_ms,
        one_minus_chi_end,
        is_half: 2 * dim_mx == dim_ms,
    })
}
