use std::collections::HashSet;

use serde::Serialize;

use super::OrientedMatroid;
use crate::error::{Error, Result};
use crate::sign::{ElementSet, SignVector};

pub const ISOMORPHISM_MAX_N: usize = 8;

/// Element `e` of the first matroid is reoriented when `flip` contains it and
/// then relabeled to `perm[e]` (zero-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    pub perm: Vec<usize>,
    pub flip: ElementSet,
}

impl Isomorphism {
    pub fn apply(&self, x: &SignVector) -> SignVector {
        x.reorient(self.flip).permute(&self.perm)
    }
}

fn cocircuit_support_sizes(m: &OrientedMatroid) -> Vec<usize> {
    let mut sizes: Vec<usize> = m.cocircuits().iter().map(|c| c.support_size()).collect();
    sizes.sort_unstable();
    sizes
}

/// Per element: how many cocircuits vanish on it.
fn element_profile(m: &OrientedMatroid) -> Vec<usize> {
    let cc = m.cocircuits();
    (0..m.n())
        .map(|e| cc.iter().filter(|c| c.zero_set() & (1 << e) != 0).count())
        .collect()
}

/// Searches for a relabeling plus reorientation carrying the covectors of
/// `a` onto those of `b`.
pub fn are_isomorphic(a: &OrientedMatroid, b: &OrientedMatroid) -> Result<Option<Isomorphism>> {
    for m in [a, b] {
        if m.n() > ISOMORPHISM_MAX_N {
            return Err(Error::SearchBudgetExceeded {
                n: m.n(),
                limit: ISOMORPHISM_MAX_N,
            });
        }
    }
    if a.n() != b.n()
        || a.len() != b.len()
        || a.height_profile() != b.height_profile()
        || cocircuit_support_sizes(a) != cocircuit_support_sizes(b)
    {
        return Ok(None);
    }
    let target: HashSet<SignVector> = b.covectors().iter().copied().collect();
    let mut search = Search {
        a,
        b,
        profile_a: element_profile(a),
        profile_b: element_profile(b),
        perm: vec![usize::MAX; a.n()],
        used: 0,
        flip: 0,
        target,
    };
    Ok(search.extend(0))
}

struct Search<'a> {
    a: &'a OrientedMatroid,
    b: &'a OrientedMatroid,
    profile_a: Vec<usize>,
    profile_b: Vec<usize>,
    perm: Vec<usize>,
    used: ElementSet,
    flip: ElementSet,
    target: HashSet<SignVector>,
}

impl Search<'_> {
    fn extend(&mut self, e: usize) -> Option<Isomorphism> {
        let n = self.a.n();
        if e == n {
            let iso = Isomorphism {
                perm: self.perm.clone(),
                flip: self.flip,
            };
            let all_hit = self.a.covectors().iter().all(|x| self.target.contains(&iso.apply(x)));
            return all_hit.then_some(iso);
        }
        for image in 0..n {
            if self.used & (1 << image) != 0 || self.profile_a[e] != self.profile_b[image] {
                continue;
            }
            for flipped in [false, true] {
                self.perm[e] = image;
                self.used |= 1 << image;
                if flipped {
                    self.flip |= 1 << e;
                }
                if self.consistent(e + 1) {
                    if let Some(found) = self.extend(e + 1) {
                        return Some(found);
                    }
                }
                self.used &= !(1 << image);
                self.flip &= !(1 << e);
                self.perm[e] = usize::MAX;
            }
        }
        None
    }

    /// Restrictions to the first `assigned` elements and their images agree.
    fn consistent(&self, assigned: usize) -> bool {
        let domain: ElementSet = (1u64 << assigned) - 1;
        let image: ElementSet = self.used;
        let mapped: HashSet<SignVector> = self
            .a
            .covectors()
            .iter()
            .map(|x| {
                let mut y = SignVector::zero(self.a.n());
                let x = x.mask(domain).reorient(self.flip);
                for e in 0..assigned {
                    y.set(self.perm[e], x.get(e));
                }
                y
            })
            .collect();
        let restricted: HashSet<SignVector> = self.b.covectors().iter().map(|y| y.mask(image)).collect();
        mapped == restricted
    }
}
