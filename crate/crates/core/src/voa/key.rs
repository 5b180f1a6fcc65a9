use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// PBW monomial `L(-p1) L(-p2) ... L(-pk) v` with `p1 >= p2 >= ... >= pk`,
/// stored as its weakly decreasing list of parts.
///
/// Keys order by degree first; within a degree, larger leading parts come
/// first, so `L(-n)` precedes `L(-n+1)L(-1)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PbwKey {
    parts: SmallVec<[u16; 8]>,
}

impl PbwKey {
    pub fn vacuum() -> Self {
        PbwKey { parts: SmallVec::new() }
    }

    /// Panics if `parts` is not weakly decreasing or contains a zero.
    pub fn new(parts: &[u16]) -> Self {
        assert!(parts.windows(2).all(|w| w[0] >= w[1]), "PBW parts must be weakly decreasing");
        assert!(parts.iter().all(|&p| p > 0), "PBW parts must be positive");
        PbwKey { parts: parts.iter().copied().collect() }
    }

    pub fn parts(&self) -> &[u16] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.parts.iter().map(|&p| p as u32).sum()
    }

    pub fn first(&self) -> Option<u16> {
        self.parts.first().copied()
    }

    /// The key without its leftmost operator.
    pub fn tail(&self) -> PbwKey {
        PbwKey { parts: self.parts.iter().skip(1).copied().collect() }
    }

    /// `L(-p)` placed in front; `p` must be at least the current first part.
    pub fn prepend(&self, p: u16) -> PbwKey {
        debug_assert!(self.first().map_or(true, |f| p >= f));
        let mut parts = SmallVec::with_capacity(self.parts.len() + 1);
        parts.push(p);
        parts.extend_from_slice(&self.parts);
        PbwKey { parts }
    }

    pub fn min_part(&self) -> Option<u16> {
        self.parts.last().copied()
    }

    /// PBW notation with the given highest-weight vector symbol.
    pub fn render(&self, vector: &str) -> String {
        let mut s = String::new();
        for p in &self.parts {
            s.push_str(&format!("L(-{p})"));
        }
        s.push_str(vector);
        s
    }
}

impl Ord for PbwKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for PbwKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PbwKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts.as_slice())
    }
}

/// All partitions of `n` into parts `>= min_part`, as PBW keys in key order.
pub fn partitions(n: u32, min_part: u16) -> Vec<PbwKey> {
    fn go(n: u32, max: u32, min: u32, prefix: &mut Vec<u16>, out: &mut Vec<PbwKey>) {
        if n == 0 {
            out.push(PbwKey::new(prefix));
            return;
        }
        let top = max.min(n);
        for p in (min..=top).rev() {
            prefix.push(p as u16);
            go(n - p, p, min, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, min_part.max(1) as u32, &mut Vec::new(), &mut out);
    out
}

/// Number of partitions of `n` into parts `>= min_part`.
pub fn partition_count(n: u32, min_part: u16) -> usize {
    // dp over allowed part sizes
    let n = n as usize;
    let mut ways = vec![0usize; n + 1];
    ways[0] = 1;
    for p in (min_part.max(1) as usize)..=n {
        for total in p..=n {
            ways[total] += ways[total - p];
        }
    }
    ways[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_partitions() {
        let keys = partitions(6, 2);
        let parts: Vec<Vec<u16>> = keys.iter().map(|k| k.parts().to_vec()).collect();
        assert_eq!(parts, vec![vec![6], vec![4, 2], vec![3, 3], vec![2, 2, 2]]);
        assert_eq!(partitions(0, 2), vec![PbwKey::vacuum()]);
        assert!(partitions(1, 2).is_empty());
    }

    #[test]
    fn counts_match_enumeration() {
        for n in 0..16 {
            assert_eq!(partitions(n, 1).len(), partition_count(n, 1));
            assert_eq!(partitions(n, 2).len(), partition_count(n, 2));
        }
        assert_eq!(partition_count(4, 1), 5);
        assert_eq!(partition_count(12, 1), 77);
    }

    #[test]
    fn key_order_is_by_degree() {
        let a = PbwKey::new(&[3]);
        let b = PbwKey::new(&[2, 1]);
        let c = PbwKey::new(&[2, 2]);
        assert!(a < b);
        assert!(b < c);
        assert_eq!(PbwKey::new(&[2, 2]).render("|0>"), "L(-2)L(-2)|0>");
    }
}
