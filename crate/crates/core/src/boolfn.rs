//! Truth tables over `{-1,1}^n`, symmetric profiles and block sensitivity.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{guard, precondition, Error, Result};

/// Largest truth table built by default (`2^20` entries).
pub const TABLE_CAP_LOG2: usize = 20;
/// Exhaustive block-sensitivity search refuses larger arities.
pub const BS_MAX_ARITY: usize = 12;

/// Named function families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Or { n: usize },
    And { n: usize },
    Maj { n: usize },
    /// `-1` iff at least `t` inputs are `-1`.
    Threshold { n: usize, t: usize },
    Parity { n: usize },
    /// AND of `m` blocks, each an OR of `n` bits.
    AndOr { m: usize, n: usize },
}

impl Family {
    pub fn arity(&self) -> usize {
        match *self {
            Family::Or { n }
            | Family::And { n }
            | Family::Maj { n }
            | Family::Threshold { n, .. }
            | Family::Parity { n } => n,
            Family::AndOr { m, n } => m * n,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Or { n } => write!(f, "OR_{n}"),
            Family::And { n } => write!(f, "AND_{n}"),
            Family::Maj { n } => write!(f, "MAJ_{n}"),
            Family::Threshold { n, t } => write!(f, "THR_{n}_{t}"),
            Family::Parity { n } => write!(f, "PARITY_{n}"),
            Family::AndOr { m, n } => write!(f, "ANDOR_{m}_{n}"),
        }
    }
}

/// A point of the cube as a vector of `±1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubePoint(Vec<i8>);

impl CubePoint {
    pub fn new(coords: Vec<i8>) -> Result<Self> {
        if coords.iter().any(|&c| c != 1 && c != -1) {
            return precondition("cube coordinates must be +1 or -1");
        }
        Ok(CubePoint(coords))
    }

    pub fn ones(n: usize) -> Self {
        CubePoint(vec![1; n])
    }

    pub fn from_index(idx: usize, n: usize) -> Self {
        CubePoint((0..n).map(|i| if idx >> i & 1 == 1 { -1 } else { 1 }).collect())
    }

    pub fn index(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == -1)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub fn coords(&self) -> &[i8] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Number of `-1` coordinates.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&c| c == -1).count()
    }
}

/// Negates the coordinates listed in `block` (0-based).
pub fn flip_block(x: &CubePoint, block: &[usize]) -> Result<CubePoint> {
    let mut out = x.clone();
    for &i in block {
        let c = out.0.get_mut(i).ok_or_else(|| {
            Error::Precondition(format!("block index {i} out of range for arity {}", x.dim()))
        })?;
        *c = -*c;
    }
    Ok(out)
}

/// Truth table of `f: {-1,1}^n -> {-1,1}`; entry `idx` holds `f` at the point
/// whose set bits are the `-1` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolFn {
    n: usize,
    table: Vec<i8>,
    name: String,
}

fn check_cap(n: usize) -> Result<()> {
    if n > TABLE_CAP_LOG2 {
        return Err(guard(format!("truth table of arity {n}"), 1 << TABLE_CAP_LOG2));
    }
    Ok(())
}

impl BoolFn {
    pub fn new(n: usize, table: Vec<i8>, name: impl Into<String>) -> Result<Self> {
        check_cap(n)?;
        if table.len() != 1 << n {
            return Err(Error::ArityMismatch {
                expected: 1 << n,
                found: table.len(),
            });
        }
        if table.iter().any(|&v| v != 1 && v != -1) {
            return precondition("truth table entries must be +1 or -1");
        }
        Ok(BoolFn {
            n,
            table,
            name: name.into(),
        })
    }

    pub fn from_fn(n: usize, name: impl Into<String>, f: impl Fn(usize) -> bool) -> Result<Self> {
        check_cap(n)?;
        let table = (0..1usize << n).map(|i| if f(i) { -1 } else { 1 }).collect();
        Ok(BoolFn {
            n,
            table,
            name: name.into(),
        })
    }

    pub fn named(family: Family) -> Result<Self> {
        let n = family.arity();
        if n == 0 {
            return precondition("arity must be at least 1");
        }
        let name = family.to_string();
        let w = |i: usize| i.count_ones() as usize;
        match family {
            Family::Or { n } => Self::from_fn(n, name, |i| i != 0),
            Family::And { n } => Self::from_fn(n, name, |i| i == (1 << n) - 1),
            Family::Maj { n } => Self::from_fn(n, name, |i| w(i) >= n.div_ceil(2)),
            Family::Threshold { n, t } => {
                if !(1..=n).contains(&t) {
                    return precondition(format!("threshold {t} outside 1..={n}"));
                }
                Self::from_fn(n, name, |i| w(i) >= t)
            }
            Family::Parity { n } => Self::from_fn(n, name, |i| w(i) % 2 == 1),
            Family::AndOr { m, n } => {
                let block = (1usize << n) - 1;
                Self::from_fn(m * n, name, |i| (0..m).all(|b| i >> (b * n) & block != 0))
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[i8] {
        &self.table
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, idx: usize) -> i8 {
        self.table[idx]
    }

    pub fn eval_point(&self, x: &CubePoint) -> Result<i8> {
        if x.dim() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                found: x.dim(),
            });
        }
        Ok(self.table[x.index()])
    }

    pub fn is_symmetric(&self) -> bool {
        let mut seen = vec![0i8; self.n + 1];
        self.table.iter().enumerate().all(|(i, &v)| {
            let slot = &mut seen[i.count_ones() as usize];
            if *slot == 0 {
                *slot = v;
            }
            *slot == v
        })
    }

    pub fn to_profile(&self) -> Option<SymmetricProfile> {
        if !self.is_symmetric() {
            return None;
        }
        let values = (0..=self.n).map(|k| self.table[(1usize << k) - 1]).collect();
        Some(SymmetricProfile { n: self.n, values })
    }

    pub fn from_profile(p: &SymmetricProfile) -> Result<Self> {
        let table_fn = |i: usize| p.values[i.count_ones() as usize] == -1;
        Self::from_fn(p.n, format!("SYM_{}", p.n), table_fn)
    }

    /// `F(f(x_1), ..., f(x_M))` where block `b` occupies bits `b·n .. b·n+n-1`.
    pub fn compose(outer: &BoolFn, inner: &BoolFn) -> Result<Self> {
        let (m, n) = (outer.n, inner.n);
        check_cap(m * n)?;
        let mask = (1usize << n) - 1;
        let name = format!("{}o{}", outer.name, inner.name);
        Self::from_fn(m * n, name, |i| {
            let y = (0..m)
                .filter(|&b| inner.table[i >> (b * n) & mask] == -1)
                .fold(0usize, |acc, b| acc | 1 << b);
            outer.table[y] == -1
        })
    }

    /// Exact `bs_x(f)`: the largest number of disjoint blocks each of which
    /// flips `f` at `x`.
    pub fn block_sensitivity_at(&self, x: usize) -> Result<usize> {
        if self.n > BS_MAX_ARITY {
            return Err(guard(format!("block sensitivity at arity {}", self.n), BS_MAX_ARITY as u64));
        }
        let size = 1usize << self.n;
        if x >= size {
            return precondition(format!("point index {x} out of range"));
        }
        let fx = self.table[x];
        let sensitive: Vec<bool> = (0..size).map(|b| b != 0 && self.table[x ^ b] != fx).collect();
        // contains_sensitive[b]: some nonempty subset of b is sensitive
        let mut contains = sensitive.clone();
        for b in 1..size {
            if !contains[b] {
                contains[b] = (0..self.n).any(|i| b >> i & 1 == 1 && contains[b & !(1 << i)]);
            }
        }
        let minimal: Vec<usize> = (1..size)
            .filter(|&b| sensitive[b] && (0..self.n).all(|i| b >> i & 1 == 0 || !contains[b & !(1 << i)]))
            .collect();
        let mut by_low: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for &b in &minimal {
            by_low[b.trailing_zeros() as usize].push(b);
        }
        // best[avail]: max packing inside avail, branching on its lowest coordinate
        let mut best = vec![0u8; size];
        for avail in 1..size {
            let low = avail.trailing_zeros() as usize;
            let mut v = best[avail & !(1 << low)];
            for &b in &by_low[low] {
                if b & avail == b {
                    v = v.max(1 + best[avail & !b]);
                }
            }
            // blocks whose lowest bit is not `low` are reached through `avail` minus `low`
            best[avail] = v;
        }
        Ok(best[size - 1] as usize)
    }

    pub fn block_sensitivity(&self) -> Result<usize> {
        (0..1usize << self.n).try_fold(0, |acc, x| Ok(acc.max(self.block_sensitivity_at(x)?)))
    }

    /// Two-line text form: `n=<k>` then the table in index order.
    pub fn to_file_string(&self) -> String {
        let vals: Vec<String> = self.table.iter().map(|v| v.to_string()).collect();
        format!("n={}\n{}\n", self.n, vals.join(" "))
    }
}

impl FromStr for BoolFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, vals) = parse_header_and_values(s)?;
        BoolFn::new(n, vals, format!("FILE_{n}"))
    }
}

fn parse_header_and_values(s: &str) -> Result<(usize, Vec<i8>)> {
    let mut lines = s.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
    let n: usize = header
        .trim()
        .strip_prefix("n=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))?;
    let vals = lines
        .flat_map(|l| l.split_whitespace())
        .map(|t| t.parse::<i8>().map_err(|_| Error::Parse(format!("bad value {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok((n, vals))
}

/// Symmetric function as a list `F(0..=n)` indexed by Hamming weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricProfile {
    n: usize,
    values: Vec<i8>,
}

impl SymmetricProfile {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if values.is_empty() {
            return precondition("profile needs at least one value");
        }
        if values.iter().any(|&v| v != 1 && v != -1) {
            return precondition("profile entries must be +1 or -1");
        }
        Ok(SymmetricProfile {
            n: values.len() - 1,
            values,
        })
    }

    /// `τ_t`: `-1` from weight `t` on.
    pub fn threshold(n: usize, t: usize) -> Result<Self> {
        if !(1..=n).contains(&t) {
            return precondition(format!("threshold {t} outside 1..={n}"));
        }
        Ok(SymmetricProfile {
            n,
            values: (0..=n).map(|i| if i >= t { -1 } else { 1 }).collect(),
        })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn at(&self, weight: usize) -> i8 {
        self.values[weight]
    }

    /// Weights `t` in `1..=n` with `F(t-1) != F(t)`.
    pub fn jumps(&self) -> Vec<usize> {
        (1..=self.n).filter(|&t| self.values[t - 1] != self.values[t]).collect()
    }

    /// `min |2t - n - 1|` over jump points, together with the jump set.
    pub fn gamma(&self) -> Result<(usize, Vec<usize>)> {
        let jumps = self.jumps();
        let g = jumps
            .iter()
            .map(|&t| (2 * t as i64 - self.n as i64 - 1).unsigned_abs() as usize)
            .min();
        match g {
            Some(g) => Ok((g, jumps)),
            None => precondition("gamma of a constant profile"),
        }
    }

    pub fn to_file_string(&self) -> String {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        format!("n={}\n{}\n", self.n, vals.join(" "))
    }
}

impl FromStr for SymmetricProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, vals) = parse_header_and_values(s)?;
        if vals.len() != n + 1 {
            return Err(Error::ArityMismatch {
                expected: n + 1,
                found: vals.len(),
            });
        }
        SymmetricProfile::new(vals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Plain recursive search over disjoint sensitive blocks, no minimality pruning.
    fn bs_brute(f: &BoolFn, x: usize, avail: usize) -> usize {
        let fx = f.eval(x);
        let mut best = 0;
        let mut b = avail;
        while b != 0 {
            if f.eval(x ^ b) != fx {
                best = best.max(1 + bs_brute(f, x, avail & !b));
            }
            b = (b - 1) & avail;
        }
        best
    }

    #[test]
    fn named_tables() {
        assert_eq!(BoolFn::named(Family::Or { n: 2 }).unwrap().table(), &[1, -1, -1, -1]);
        assert_eq!(BoolFn::named(Family::And { n: 2 }).unwrap().table(), &[1, 1, 1, -1]);
        let ao = BoolFn::named(Family::AndOr { m: 2, n: 2 }).unwrap();
        assert_eq!(ao.eval(0b1111), -1);
        assert_eq!(ao.eval(0b0011), 1);
        assert_eq!(ao.eval(0b0110), -1);
    }

    #[test]
    fn threshold_aliases() {
        for n in 1..=7 {
            let thr = |t| BoolFn::named(Family::Threshold { n, t }).unwrap();
            assert_eq!(thr(1).table(), BoolFn::named(Family::Or { n }).unwrap().table());
            assert_eq!(thr(n).table(), BoolFn::named(Family::And { n }).unwrap().table());
            assert_eq!(thr(n.div_ceil(2)).table(), BoolFn::named(Family::Maj { n }).unwrap().table());
        }
    }

    #[test]
    fn table_guard() {
        assert!(matches!(
            BoolFn::named(Family::AndOr { m: 3, n: 7 }),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn flips() {
        let one = CubePoint::ones(3);
        assert_eq!(flip_block(&one, &[]).unwrap(), one);
        assert_eq!(
            flip_block(&CubePoint::ones(2), &[0, 1]).unwrap(),
            CubePoint::new(vec![-1, -1]).unwrap()
        );
        assert!(flip_block(&one, &[3]).is_err());
    }

    #[test]
    fn and_block_sensitivity() {
        for m in 1..=6 {
            let and = BoolFn::named(Family::And { n: m }).unwrap();
            let all_true = (1 << m) - 1;
            assert_eq!(and.block_sensitivity_at(all_true).unwrap(), m);
            for z in 0..all_true {
                assert_eq!(and.block_sensitivity_at(z).unwrap(), 1);
            }
            assert_eq!(and.block_sensitivity().unwrap(), m);
        }
    }

    #[test]
    fn parity_block_sensitivity() {
        let p = BoolFn::named(Family::Parity { n: 7 }).unwrap();
        for x in [0, 5, 127] {
            assert_eq!(p.block_sensitivity_at(x).unwrap(), 7);
        }
    }

    #[test]
    fn block_sensitivity_guard() {
        let or = BoolFn::named(Family::Or { n: 13 }).unwrap();
        assert!(matches!(or.block_sensitivity_at(0), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn gamma_examples() {
        let maj9 = BoolFn::named(Family::Maj { n: 9 }).unwrap().to_profile().unwrap();
        assert_eq!(maj9.gamma().unwrap(), (0, vec![5]));
        for n in 2..10 {
            let or = SymmetricProfile::threshold(n, 1).unwrap();
            let and = SymmetricProfile::threshold(n, n).unwrap();
            assert_eq!(or.gamma().unwrap().0, n - 1);
            assert_eq!(and.gamma().unwrap().0, n - 1);
        }
        assert!(SymmetricProfile::new(vec![1, 1, 1]).unwrap().gamma().is_err());
    }

    #[test]
    fn file_formats() {
        let f = BoolFn::named(Family::Maj { n: 3 }).unwrap();
        let g: BoolFn = f.to_file_string().parse().unwrap();
        assert_eq!(f.table(), g.table());
        assert!("n=2\n1 1 1".parse::<BoolFn>().is_err());
        let p = SymmetricProfile::threshold(4, 2).unwrap();
        assert_eq!(p.to_file_string().parse::<SymmetricProfile>().unwrap(), p);
    }

    #[test]
    fn composition_matches_named_andor() {
        let outer = BoolFn::named(Family::And { n: 3 }).unwrap();
        let inner = BoolFn::named(Family::Or { n: 2 }).unwrap();
        let c = BoolFn::compose(&outer, &inner).unwrap();
        assert_eq!(c.table(), BoolFn::named(Family::AndOr { m: 3, n: 2 }).unwrap().table());
    }

    proptest! {
        #[test]
        fn flip_is_involution(idx in 0usize..256, block in proptest::collection::btree_set(0usize..8, 0..8)) {
            let x = CubePoint::from_index(idx, 8);
            let b: Vec<usize> = block.into_iter().collect();
            prop_assert_eq!(flip_block(&flip_block(&x, &b).unwrap(), &b).unwrap(), x);
        }

        #[test]
        fn profile_roundtrip(values in proptest::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], 1..11)) {
            let p = SymmetricProfile::new(values).unwrap();
            let f = BoolFn::from_profile(&p).unwrap();
            prop_assert!(f.is_symmetric());
            let back = f.to_profile().unwrap();
            prop_assert_eq!(&back, &p);
            let again = BoolFn::from_profile(&back).unwrap();
            prop_assert_eq!(again.table(), f.table());
        }

        #[test]
        fn threshold_single_jump(n in 1usize..30, t in 1usize..30) {
            prop_assume!(t <= n);
            prop_assert_eq!(SymmetricProfile::threshold(n, t).unwrap().jumps(), vec![t]);
            let f = BoolFn::named(Family::Threshold { n: n.min(10), t: t.min(n.min(10)) }).unwrap();
            prop_assert_eq!(f.to_profile().unwrap().jumps(), vec![t.min(n.min(10))]);
        }

        #[test]
        fn block_sensitivity_matches_brute_force(n in 1usize..6, bits in any::<u64>(), x in any::<usize>()) {
            let size = 1usize << n;
            let f = BoolFn::from_fn(n, "rand", |i| bits >> (i % 64) & 1 == 1).unwrap();
            let x = x % size;
            let bs = f.block_sensitivity_at(x).unwrap();
            prop_assert_eq!(bs, bs_brute(&f, x, size - 1));
            prop_assert!(bs <= n);
        }
    }
}
