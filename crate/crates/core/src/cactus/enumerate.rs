//! Exhaustive cactus generation.
//!
//! A cactus on a vertex set `V` is viewed as rooted at some `r in V`. Let `m`
//! be the least vertex other than `r`. Exactly one block `B` at `r` has `m`
//! in the branch `W` hanging from it, so every cactus decomposes uniquely
//! into: the branch set `W` (containing `m`), the block `B = {r} u T` with
//! `T` inside `W`, a split of `W \ T` among the members `u` of `T`, a
//! sub-cactus on each part rooted at `u`, and a cactus on `V \ W` rooted at
//! `r`. Walking this decomposition visits every cactus exactly once.

use super::Cactus;
use crate::error::{Error, Result};
use crate::Guard;

/// Largest `n` enumerated without an explicit override.
pub const CACTUS_LIMIT: usize = 11;

type Mask = u32;

struct Search<'a, F> {
    n: usize,
    allowed: &'a [usize],
    tasks: Vec<(Mask, usize)>,
    blocks: Vec<Mask>,
    visit: F,
}

fn check_arities(allowed: &[usize]) -> Result<()> {
    for &k in allowed {
        if k < 3 || k % 2 == 0 {
            return Err(Error::InvalidArity {
                arity: k,
                reason: "cactus blocks need odd size >= 3",
            });
        }
    }
    Ok(())
}

/// Visits every cactus on `[n]` whose block sizes lie in `allowed`, each
/// exactly once, in a fixed order. Even `n` has no cactus.
pub fn for_each_cactus(n: usize, allowed: &[usize], guard: Guard, visit: impl FnMut(&Cactus)) -> Result<()> {
    check_arities(allowed)?;
    guard.check("cactus enumeration", n, CACTUS_LIMIT)?;
    if n >= Mask::BITS as usize {
        return Err(Error::GuardExceeded {
            what: "cactus enumeration (mask width)",
            n,
            limit: Mask::BITS as usize - 1,
        });
    }
    if n == 0 {
        return Ok(());
    }
    let mut search = Search {
        n,
        allowed,
        tasks: vec![(full(n), 1)],
        blocks: Vec::new(),
        visit,
    };
    search.solve();
    Ok(())
}

pub fn enumerate_cacti(n: usize, allowed: &[usize], guard: Guard) -> Result<Vec<Cactus>> {
    let mut out = Vec::new();
    for_each_cactus(n, allowed, guard, |c| out.push(c.clone()))?;
    Ok(out)
}

pub fn count_cacti(n: usize, allowed: &[usize], guard: Guard) -> Result<u64> {
    let mut count = 0u64;
    for_each_cactus(n, allowed, guard, |_| count += 1)?;
    Ok(count)
}

fn full(n: usize) -> Mask {
    ((1u64 << n) - 1) as Mask
}

fn bit(v: usize) -> Mask {
    1 << (v - 1)
}

fn members(mask: Mask) -> Vec<usize> {
    crate::grassmann::indices_of(mask)
}

impl<F: FnMut(&Cactus)> Search<'_, F> {
    fn solve(&mut self) {
        let Some((set, root)) = self.tasks.pop() else {
            self.emit();
            return;
        };
        let rest = set & !bit(root);
        if rest == 0 {
            self.solve();
        } else if rest.count_ones().is_multiple_of(2) {
            self.branch(set, root, rest);
        }
        self.tasks.push((set, root));
    }

    /// All choices of the branch containing the least non-root vertex.
    fn branch(&mut self, set: Mask, root: usize, rest: Mask) {
        let least = rest & rest.wrapping_neg();
        let others = rest & !least;
        // submasks of `others`, each joined with `least`
        let mut sub = others;
        loop {
            let w = sub | least;
            if w.count_ones().is_multiple_of(2) {
                self.split_branch(set, root, w);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & others;
        }
    }

    fn split_branch(&mut self, set: Mask, root: usize, w: Mask) {
        let mut t = w;
        loop {
            let size = t.count_ones() as usize;
            if size >= 2 && self.allowed.contains(&(size + 1)) {
                self.attach(set, root, w, t);
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & w;
        }
    }

    /// Block `{root} u t`; the rest of `w` is distributed among `t`.
    fn attach(&mut self, set: Mask, root: usize, w: Mask, t: Mask) {
        let heads = members(t);
        let loose = members(w & !t);
        let mut owner = vec![0usize; loose.len()];
        loop {
            let mut parts: Vec<Mask> = heads.iter().map(|&u| bit(u)).collect();
            for (k, &v) in loose.iter().enumerate() {
                parts[owner[k]] |= bit(v);
            }
            if parts.iter().all(|p| p.count_ones() % 2 == 1) {
                let depth = self.tasks.len();
                self.tasks.push((set & !w, root));
                for (&u, &p) in heads.iter().zip(&parts) {
                    self.tasks.push((p, u));
                }
                self.blocks.push(t | bit(root));
                self.solve();
                self.blocks.pop();
                self.tasks.truncate(depth);
            }
            // odometer over owner assignments
            let mut k = 0;
            loop {
                if k == owner.len() {
                    return;
                }
                owner[k] += 1;
                if owner[k] < heads.len() {
                    break;
                }
                owner[k] = 0;
                k += 1;
            }
        }
    }

    fn emit(&mut self) {
        let blocks = self.blocks.iter().map(|&m| members(m)).collect();
        let cactus = Cactus::canonical(self.n, blocks);
        debug_assert_eq!(super::is_cactus(self.n, cactus.blocks()), Ok(()));
        (self.visit)(&cactus);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(count_cacti(1, &[3], Guard::Checked).unwrap(), 1);
        assert_eq!(count_cacti(3, &[3], Guard::Checked).unwrap(), 1);
        assert_eq!(count_cacti(5, &[3], Guard::Checked).unwrap(), 15);
        assert_eq!(count_cacti(5, &[3, 5], Guard::Checked).unwrap(), 16);
        assert_eq!(count_cacti(7, &[7], Guard::Checked).unwrap(), 1);
        for even in [2, 4, 6] {
            assert_eq!(count_cacti(even, &[3, 5], Guard::Checked).unwrap(), 0);
        }
    }

    #[test]
    fn uniform_hypertree_counts() {
        // 3-uniform hypertrees on n = 2m + 1 vertices: n^(m-1) (2m)! / (2^m m!)
        assert_eq!(count_cacti(7, &[3], Guard::Checked).unwrap(), 7 * 7 * 15);
        assert_eq!(count_cacti(9, &[3], Guard::Checked).unwrap(), 9 * 9 * 9 * 105);
        // 5-uniform on 9 vertices: 9 * 8! / (4!^2 2!)
        assert_eq!(count_cacti(9, &[5], Guard::Checked).unwrap(), 9 * 35);
    }

    #[test]
    fn single_cactus_on_three() {
        let all = enumerate_cacti(3, &[3], Guard::Checked).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].blocks(), &[vec![1, 2, 3]]);
    }

    #[test]
    fn validation() {
        assert!(matches!(
            count_cacti(5, &[4], Guard::Checked),
            Err(Error::InvalidArity { arity: 4, .. })
        ));
        assert!(matches!(
            count_cacti(13, &[3], Guard::Checked),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
