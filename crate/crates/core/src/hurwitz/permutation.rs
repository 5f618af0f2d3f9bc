use super::partition::Partition;

/// Permutation of `{0, .., d-1}` in one-line notation.
///
/// Products are read left to right: `a.then(b)` applies `a` first. The
/// counts built on top only depend on conjugacy classes, which do not see
/// the convention.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation((0..d as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if (i as usize) >= images.len() || std::mem::replace(&mut seen[i as usize], true) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    pub fn transposition(d: usize, a: usize, b: usize) -> Self {
        let mut p = Permutation::identity(d);
        p.0.swap(a, b);
        p
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    /// In-place right multiplication by the transposition `(a b)`.
    pub fn then_swap(&mut self, a: u8, b: u8) {
        for v in self.0.iter_mut() {
            if *v == a {
                *v = b;
            } else if *v == b {
                *v = a;
            }
        }
    }

    pub fn cycle_type(&self) -> Partition {
        cycle_type_of(&self.0)
    }

    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for s in 0..self.0.len() {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = s;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i as u8);
                i = self.0[i] as usize;
            }
            out.push(cyc);
        }
        out
    }
}

pub(crate) fn cycle_type_of(images: &[u8]) -> Partition {
    let mut seen = [false; 32];
    let mut parts = Vec::new();
    for s in 0..images.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            len += 1;
            i = images[i] as usize;
        }
        parts.push(len);
    }
    Partition::new(parts)
}

/// All permutations of `{0, .., d-1}` whose cycles all have length `q`
/// (empty unless `q | d`), generated cycle by cycle: the smallest unused
/// point opens a cycle and the remaining `q - 1` entries run over ordered
/// choices of unused points.
pub fn permutations_of_cycle_type(d: usize, q: usize) -> Vec<Permutation> {
    fn rec(images: &mut Vec<u8>, used: &mut Vec<bool>, q: usize, out: &mut Vec<Permutation>) {
        let Some(first) = used.iter().position(|&u| !u) else {
            out.push(Permutation(images.clone()));
            return;
        };
        used[first] = true;
        let mut cycle = vec![first];
        fill(images, used, q, &mut cycle, out);
        used[first] = false;
    }
    fn fill(images: &mut Vec<u8>, used: &mut Vec<bool>, q: usize, cycle: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if cycle.len() == q {
            for w in 0..q {
                images[cycle[w]] = cycle[(w + 1) % q] as u8;
            }
            rec(images, used, q, out);
            return;
        }
        for j in 0..used.len() {
            if !used[j] {
                used[j] = true;
                cycle.push(j);
                fill(images, used, q, cycle, out);
                cycle.pop();
                used[j] = false;
            }
        }
    }
    if q == 0 || !d.is_multiple_of(q) {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(&mut vec![0; d], &mut vec![false; d], q, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::factorial;
    use num_bigint::BigInt;

    #[test]
    fn class_sizes() {
        for (d, q) in [(6, 1), (6, 2), (6, 3), (6, 6), (4, 2), (5, 2), (0, 3)] {
            let perms = permutations_of_cycle_type(d, q);
            let expected = if d % q != 0 {
                BigInt::from(0)
            } else {
                let k = (d / q) as u32;
                factorial(d as u64) / (BigInt::from(q).pow(k) * factorial(k as u64))
            };
            assert_eq!(BigInt::from(perms.len()), expected, "d={d} q={q}");
            let want = Partition::new(vec![q as u32; d / q.max(1)]);
            assert!(perms.iter().all(|p| p.cycle_type() == want));
        }
    }

    #[test]
    fn composition_order() {
        let a = Permutation::transposition(3, 0, 1);
        let b = Permutation::transposition(3, 1, 2);
        let ab = a.then(&b);
        assert_eq!(ab.apply(0), 2); // 0 -a-> 1 -b-> 2
        let mut c = a.clone();
        c.then_swap(1, 2);
        assert_eq!(c, ab);
        assert_eq!(ab.cycle_type(), Partition::new(vec![3]));
        assert!(Permutation::from_images(vec![0, 0]).is_none());
    }
}
