//! Integer partitions, set partitions with a distinguished block, Bell
//! numbers and Pochhammer symbols.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::arith::{rat, RatFun};

/// A weakly decreasing partition padded with zeros to a fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IntPartition(Vec<u32>);

impl IntPartition {
    /// Sorts the input into weakly decreasing order.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntPartition(parts)
    }

    pub fn zero(m: usize) -> Self {
        IntPartition(vec![0; m])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions of `d` into at most `m` parts, lexicographically descending.
pub fn enumerate_int_partitions(d: u32, m: usize) -> Vec<IntPartition> {
    fn rec(rest: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<IntPartition>) {
        if slots == 0 {
            if rest == 0 {
                out.push(IntPartition(cur.clone()));
            }
            return;
        }
        // The remaining slots can hold at most `max * slots`.
        if (max as u64) * (slots as u64) < rest as u64 {
            return;
        }
        for first in (0..=rest.min(max)).rev() {
            cur.push(first);
            rec(rest - first, first, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if m == 0 {
        if d == 0 {
            out.push(IntPartition(Vec::new()));
        }
        return out;
    }
    rec(d, d, m, &mut Vec::with_capacity(m), &mut out);
    out
}

/// A partition `J0 | J1 … Jk` of `{1, …, m}` where only `J0` may be empty.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SetPartition {
    m: usize,
    j0: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Builds and canonicalises; elements are 1-based.
    pub fn new(m: usize, mut j0: Vec<usize>, mut blocks: Vec<Vec<usize>>) -> crate::Result<Self> {
        j0.sort_unstable();
        blocks.retain(|b| !b.is_empty());
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        let mut seen = vec![false; m + 1];
        for &e in j0.iter().chain(blocks.iter().flatten()) {
            if e == 0 || e > m || seen[e] {
                return Err(crate::Error::Structural(format!(
                    "not a set partition of [{m}]: element {e}"
                )));
            }
            seen[e] = true;
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(crate::Error::Structural(format!(
                "blocks do not cover [{m}]"
            )));
        }
        Ok(SetPartition { m, j0, blocks })
    }

    /// From a partition of `{0, …, m}`: the block containing 0 becomes `J0`.
    pub fn from_partition_of_zero_to_m(m: usize, parts: &[Vec<usize>]) -> crate::Result<Self> {
        let mut j0 = Vec::new();
        let mut blocks = Vec::new();
        for p in parts {
            if p.contains(&0) {
                j0.extend(p.iter().copied().filter(|&e| e != 0));
            } else {
                blocks.push(p.clone());
            }
        }
        Self::new(m, j0, blocks)
    }

    /// The corresponding partition of `{0, …, m}`, blocks sorted by minimum.
    pub fn to_partition_of_zero_to_m(&self) -> Vec<Vec<usize>> {
        let mut first = vec![0];
        first.extend(&self.j0);
        let mut out = vec![first];
        out.extend(self.blocks.iter().cloned());
        out
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn j0(&self) -> &[usize] {
        &self.j0
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// The partition of a point: `z_i = 0` puts `i` in `J0`, equal nonzero
    /// coordinates share a block.
    pub fn of_point<T: PartialEq + num_traits::Zero>(z: &[T]) -> Self {
        let m = z.len();
        let mut j0 = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, zi) in z.iter().enumerate() {
            if zi.is_zero() {
                j0.push(i + 1);
            } else if let Some(b) = blocks.iter_mut().find(|b| z[b[0] - 1] == *zi) {
                b.push(i + 1);
            } else {
                blocks.push(vec![i + 1]);
            }
        }
        Self::new(m, j0, blocks).expect("point partition is valid")
    }
}

fn fmt_set(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J0={} |", fmt_set(&self.j0))?;
        for b in &self.blocks {
            write!(f, " {}", fmt_set(b))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All set partitions of `[m]` with distinguished block, via restricted
/// growth strings on `{0, …, m}`.
pub fn enumerate_set_partitions(m: usize) -> Vec<SetPartition> {
    let n = m + 1;
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let nblocks = rgs.iter().max().unwrap() + 1;
        let mut parts = vec![Vec::new(); nblocks];
        for (e, &b) in rgs.iter().enumerate() {
            parts[b].push(e);
        }
        out.push(
            SetPartition::from_partition_of_zero_to_m(m, &parts).expect("valid by construction"),
        );
        // Next restricted growth string: a[i] <= 1 + max(a[0..i]).
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let prefix_max = *rgs[..i].iter().max().unwrap();
            if rgs[i] <= prefix_max {
                rgs[i] += 1;
                for v in &mut rgs[i + 1..] {
                    *v = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// Bell number `B_n` from the Bell triangle.
pub fn bell_number(n: usize) -> BigUint {
    let mut row = vec![BigUint::from(1u32)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().unwrap().clone());
        for v in &row {
            let last = next.last().unwrap().clone();
            next.push(last + v);
        }
        row = next;
    }
    row[0].clone()
}

/// Rising factorial `base (base+1) … (base+n-1)`.
pub fn pochhammer(base: &RatFun, n: u32) -> RatFun {
    let mut out = RatFun::one(base.vars());
    for i in 0..n {
        let shifted = base + &RatFun::constant(base.vars(), rat(i as i64, 1));
        out = &out * &shifted;
    }
    out
}

/// `(base)_λ = ∏_i (base − (i−1)/2)_{λ_i}`.
pub fn gen_pochhammer(base: &RatFun, lambda: &IntPartition) -> RatFun {
    let mut out = RatFun::one(base.vars());
    for (i, &part) in lambda.parts().iter().enumerate() {
        if part == 0 {
            continue;
        }
        let shifted = base - &RatFun::constant(base.vars(), rat(i as i64, 2));
        out = &out * &pochhammer(&shifted, part);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Vars;
    use std::collections::HashSet;

    fn a() -> RatFun {
        RatFun::var(&Vars::params(), 0)
    }

    #[test]
    fn int_partition_examples() {
        let p = enumerate_int_partitions(2, 2);
        assert_eq!(p, vec![IntPartition(vec![2, 0]), IntPartition(vec![1, 1])]);
        assert_eq!(enumerate_int_partitions(0, 3), vec![IntPartition::zero(3)]);
        assert_eq!(enumerate_int_partitions(5, 5).len(), 7);
    }

    #[test]
    fn int_partitions_against_brute_force() {
        for d in 0..8u32 {
            for m in 1..5usize {
                let mut brute = HashSet::new();
                let total = (d as usize + 1).pow(m as u32);
                for code in 0..total {
                    let mut c = code;
                    let mut v = Vec::new();
                    for _ in 0..m {
                        v.push((c % (d as usize + 1)) as u32);
                        c /= d as usize + 1;
                    }
                    if v.iter().sum::<u32>() == d {
                        brute.insert(IntPartition::new(v));
                    }
                }
                let got = enumerate_int_partitions(d, m);
                assert_eq!(got.len(), brute.len());
                assert!(got.windows(2).all(|w| w[0] > w[1]));
            }
        }
    }

    #[test]
    fn set_partitions_m2() {
        let got: Vec<String> = enumerate_set_partitions(2)
            .iter()
            .map(|s| s.to_string())
            .collect();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        let mut want = vec![
            "J0={} | {1} {2}",
            "J0={} | {1,2}",
            "J0={1} | {2}",
            "J0={2} | {1}",
            "J0={1,2} |",
        ];
        want.sort();
        assert_eq!(got_sorted, want);
    }

    #[test]
    fn set_partition_counts() {
        assert_eq!(enumerate_set_partitions(1).len(), 2);
        assert_eq!(enumerate_set_partitions(4).len(), 52);
        for m in 1..=7 {
            let all = enumerate_set_partitions(m);
            let uniq: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(uniq.len(), all.len());
            assert_eq!(BigUint::from(all.len()), bell_number(m + 1));
        }
    }

    #[test]
    fn round_trip() {
        for sp in enumerate_set_partitions(4) {
            let p = sp.to_partition_of_zero_to_m();
            assert_eq!(
                SetPartition::from_partition_of_zero_to_m(4, &p).unwrap(),
                sp
            );
        }
    }

    #[test]
    fn bell_values() {
        assert_eq!(bell_number(0), BigUint::from(1u32));
        assert_eq!(bell_number(3), BigUint::from(5u32));
        assert_eq!(bell_number(5), BigUint::from(52u32));
    }

    #[test]
    fn pochhammer_values() {
        let v = Vars::params();
        assert!(pochhammer(&a(), 0).is_one());
        let one = RatFun::one(&v);
        let two = RatFun::constant(&v, rat(2, 1));
        assert_eq!(
            pochhammer(&a(), 3),
            &(&a() * &(&a() + &one)) * &(&a() + &two)
        );
        assert_eq!(pochhammer(&one, 5).constant_value().unwrap(), rat(120, 1));
    }

    #[test]
    fn gen_pochhammer_values() {
        let v = Vars::params();
        assert_eq!(gen_pochhammer(&a(), &IntPartition(vec![1, 0])), a());
        let half = RatFun::constant(&v, rat(1, 2));
        assert_eq!(
            gen_pochhammer(&a(), &IntPartition(vec![1, 1])),
            &a() * &(&a() - &half)
        );
        assert!(gen_pochhammer(&a(), &IntPartition::zero(3)).is_one());
        for n in 0..6 {
            assert_eq!(
                gen_pochhammer(&a(), &IntPartition(vec![n, 0, 0])),
                pochhammer(&a(), n)
            );
        }
    }

    #[test]
    fn point_partition() {
        let z = [rat(0, 1), rat(3, 1), rat(3, 1), rat(1, 2)];
        assert_eq!(SetPartition::of_point(&z).to_string(), "J0={1} | {2,3} {4}");
    }
}
