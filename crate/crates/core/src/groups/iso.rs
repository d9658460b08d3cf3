//! Certified isomorphism search between materialized groups.
//!
//! A generating tuple of `G` is chosen so that its members have rare element
//! orders; candidate images in `H` must agree on order, class size and the
//! orders of a few short words. Each surviving tuple is extended along the
//! Cayley graph of `G`, failing on the first inconsistent edge, so a returned
//! map is a bijective homomorphism by construction.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{FiniteGroup, GroupElement};

#[derive(Clone, Debug)]
pub struct IsoOptions {
    /// Maximum number of candidate image tuples to extend.
    pub max_candidates: usize,
    /// Maximum number of pairs tested while looking for a 2-element generating set.
    pub max_generation_tests: usize,
    pub deadline: Option<Instant>,
}

impl Default for IsoOptions {
    fn default() -> Self {
        Self {
            max_candidates: 5_000_000,
            max_generation_tests: 20_000,
            deadline: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    /// Generating tuple of the source group (element indices).
    pub source_generators: Vec<usize>,
    /// Their images in the target group (element indices).
    pub images: Vec<usize>,
    /// Full element map, source index -> target index.
    #[serde(skip)]
    pub map: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    Isomorphic(IsoWitness),
    NotIsomorphic { reason: String },
    Inconclusive { tried: usize },
}

impl IsoOutcome {
    pub fn witness(&self) -> Option<&IsoWitness> {
        match self {
            IsoOutcome::Isomorphic(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }
}

/// Decide whether `g ≅ h`, returning a verified witness when they are.
pub fn isomorphic<E: GroupElement, F: GroupElement>(
    g: &FiniteGroup<E>,
    h: &FiniteGroup<F>,
    opts: &IsoOptions,
) -> IsoOutcome {
    if g.order() != h.order() {
        return IsoOutcome::NotIsomorphic {
            reason: format!("orders differ ({} vs {})", g.order(), h.order()),
        };
    }
    if g.order_histogram() != h.order_histogram() {
        return IsoOutcome::NotIsomorphic {
            reason: "element-order histograms differ".into(),
        };
    }
    if g.class_sizes() != h.class_sizes() {
        return IsoOutcome::NotIsomorphic {
            reason: "conjugacy class sizes differ".into(),
        };
    }
    let (gd, hd) = (g.derived_subgroup().order(), h.derived_subgroup().order());
    if gd != hd {
        return IsoOutcome::NotIsomorphic {
            reason: format!("abelianization orders differ ({} vs {})", g.order() / gd, h.order() / hd),
        };
    }
    if g.order() == 1 {
        return IsoOutcome::Isomorphic(IsoWitness {
            source_generators: vec![],
            images: vec![],
            map: vec![0],
        });
    }

    let gens = generating_tuple(g, opts);
    let g_cls = g.class_size_of();
    let h_cls = h.class_size_of();
    let signature = |grp_order: &dyn Fn(usize) -> usize, cls: &[usize], x: usize| {
        (grp_order(x), cls[x])
    };
    let g_ord = |x| g.element_order(x);
    let h_ord = |x| h.element_order(x);

    // First image: one representative per class of H suffices, since any
    // isomorphism can be post-composed with an inner automorphism of H.
    let first_sig = signature(&g_ord, &g_cls, gens[0]);
    let first: Vec<usize> = h
        .conjugacy_classes()
        .iter()
        .map(|c| c[0])
        .filter(|&y| signature(&h_ord, &h_cls, y) == first_sig)
        .collect();

    let rest: Vec<Vec<usize>> = gens[1..]
        .iter()
        .map(|&x| {
            let sig = signature(&g_ord, &g_cls, x);
            (0..h.order())
                .filter(|&y| signature(&h_ord, &h_cls, y) == sig)
                .collect()
        })
        .collect();

    let tried = AtomicUsize::new(0);
    let out_of_budget = AtomicBool::new(false);
    let g_words: Vec<[usize; 3]> = gens[1..].iter().map(|&x| word_orders(g, gens[0], x)).collect();

    for &h0 in &first {
        let found = search_rest(
            g,
            h,
            &gens,
            &mut vec![h0],
            &rest,
            &g_words,
            &tried,
            &out_of_budget,
            opts,
        );
        if let Some(map) = found {
            let images = gens.iter().map(|&x| map[x]).collect();
            return IsoOutcome::Isomorphic(IsoWitness {
                source_generators: gens,
                images,
                map,
            });
        }
        if out_of_budget.load(Ordering::Relaxed) {
            return IsoOutcome::Inconclusive {
                tried: tried.load(Ordering::Relaxed),
            };
        }
    }
    IsoOutcome::NotIsomorphic {
        reason: "no candidate generator images extend to an isomorphism".into(),
    }
}

#[allow(clippy::too_many_arguments)]
fn search_rest<E: GroupElement, F: GroupElement>(
    g: &FiniteGroup<E>,
    h: &FiniteGroup<F>,
    gens: &[usize],
    partial: &mut Vec<usize>,
    rest: &[Vec<usize>],
    g_words: &[[usize; 3]],
    tried: &AtomicUsize,
    out_of_budget: &AtomicBool,
    opts: &IsoOptions,
) -> Option<Vec<usize>> {
    let depth = partial.len();
    if depth == gens.len() {
        return extend(g, h, gens, partial);
    }
    let t = depth - 1;
    let h0 = partial[0];
    let over_budget = || {
        if out_of_budget.load(Ordering::Relaxed) {
            return true;
        }
        let n = tried.fetch_add(1, Ordering::Relaxed);
        let expired = opts.deadline.is_some_and(|d| Instant::now() >= d);
        if n >= opts.max_candidates || expired {
            out_of_budget.store(true, Ordering::Relaxed);
            return true;
        }
        false
    };
    if depth + 1 == gens.len() {
        // Leaf level: extend candidates in parallel; the first success in
        // candidate order wins, independent of scheduling.
        return rest[t].par_iter().find_map_first(|&y| {
            if over_budget() || word_orders(h, h0, y) != g_words[t] {
                return None;
            }
            let mut imgs = partial.clone();
            imgs.push(y);
            extend(g, h, gens, &imgs)
        });
    }
    for &y in &rest[t] {
        if over_budget() {
            return None;
        }
        if word_orders(h, h0, y) != g_words[t] {
            continue;
        }
        partial.push(y);
        let r = search_rest(g, h, gens, partial, rest, g_words, tried, out_of_budget, opts);
        partial.pop();
        if r.is_some() {
            return r;
        }
    }
    None
}

/// Orders of `ab`, `ab²`, `(ab)²`.
fn word_orders<E: GroupElement>(g: &FiniteGroup<E>, a: usize, b: usize) -> [usize; 3] {
    let ab = g.mul(a, b);
    let ab2 = g.mul(ab, b);
    let abab = g.mul(ab, ab);
    [g.element_order(ab), g.element_order(ab2), g.element_order(abab)]
}

/// Extend `gens[t] ↦ images[t]` along the Cayley graph of `g`.
fn extend<E: GroupElement, F: GroupElement>(
    g: &FiniteGroup<E>,
    h: &FiniteGroup<F>,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let n = g.order();
    let mut map = vec![UNSET; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut mapped = 1;
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let z = h.mul(map[x], t);
            if map[y] == UNSET {
                if used[z] {
                    return None;
                }
                map[y] = z;
                used[z] = true;
                mapped += 1;
                queue.push_back(y);
            } else if map[y] != z {
                return None;
            }
        }
    }
    (mapped == n).then_some(map)
}

/// A generating tuple of `g`: a single element if cyclic, else the pair with
/// the smallest product of order-class sizes that generates, else the stored
/// generators.
fn generating_tuple<E: GroupElement>(g: &FiniteGroup<E>, opts: &IsoOptions) -> Vec<usize> {
    let n = g.order();
    if let Some(x) = (0..n).find(|&x| g.element_order(x) == n) {
        return vec![x];
    }
    let hist = g.order_histogram();
    let rarity = |x: usize| hist[&g.element_order(x)];
    let reps: Vec<usize> = g
        .conjugacy_classes()
        .iter()
        .map(|c| c[0])
        .filter(|&r| r != 0)
        .collect();
    let mut pairs: Vec<(usize, usize, usize)> = reps
        .iter()
        .flat_map(|&r| (1..n).map(move |x| (r, x)))
        .map(|(r, x)| (rarity(r) * rarity(x), r, x))
        .collect();
    pairs.sort_unstable();
    for &(_, r, x) in pairs.iter().take(opts.max_generation_tests) {
        if g.subgroup(&[r, x]).order() == n {
            return vec![r, x];
        }
    }
    g.generators().to_vec()
}

/// Independent check of a witness: `map` is a bijection and
/// `φ(x·s) = φ(x)·φ(s)` for every element `x` and generator `s` of `g`;
/// for groups up to `exhaustive_limit` elements, for every pair.
pub fn verify_isomorphism<E: GroupElement, F: GroupElement>(
    g: &FiniteGroup<E>,
    h: &FiniteGroup<F>,
    map: &[usize],
    exhaustive_limit: usize,
) -> bool {
    let n = g.order();
    if h.order() != n || map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &y in map {
        if y >= n || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    let right: Vec<usize> = if n <= exhaustive_limit {
        (0..n).collect()
    } else {
        g.generators().to_vec()
    };
    (0..n).into_par_iter().all(|x| {
        right
            .iter()
            .all(|&s| map[g.mul(x, s)] == h.mul(map[x], map[s]))
    })
}
