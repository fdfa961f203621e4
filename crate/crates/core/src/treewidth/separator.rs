use super::decomposition::TreeDecomposition;
use crate::bits::{self, Mask};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A separation `(A, B)` of a vertex set with `C = A ∩ B` a bag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    /// Vertices strictly on the `A` side.
    pub a: Vec<usize>,
    /// Vertices strictly on the `B` side.
    pub b: Vec<usize>,
    /// The separator, equal to the chosen bag.
    pub c: Vec<usize>,
    /// Index of the chosen bag.
    pub bag: usize,
}

/// Finds a bag `C` of `td` and a split of the components of `g - C` into
/// `A` and `B` with `|A ∩ R|, |B ∩ R| <= 2/3 |R \ C|`.
pub fn balanced_separator(g: &Graph, td: &TreeDecomposition, r: &[usize]) -> Result<Separation> {
    balanced_separator_in(g, &bits::full_mask(g.n()), td, r)
}

/// As [`balanced_separator`], inside `g[host]`; `td` must decompose `g[host]`.
pub fn balanced_separator_in(
    g: &Graph,
    host: &Mask,
    td: &TreeDecomposition,
    r: &[usize],
) -> Result<Separation> {
    let r_mask = bits::mask_of(g.n(), r);
    let mut candidates: Vec<(usize, usize, Vec<Vec<usize>>, usize)> =
        Vec::with_capacity(td.bags.len());
    for (x, bag) in td.bags.iter().enumerate() {
        let mut rest = host.clone();
        for &v in bag {
            rest.set(v, false);
        }
        let comps = bits::components_in(g, &rest);
        let heaviest = comps.iter().map(|c| weight(c, &r_mask)).max().unwrap_or(0);
        let outside = r.iter().filter(|&&v| !bag.contains(&v)).count();
        candidates.push((heaviest, x, comps, outside));
    }
    candidates.sort_by_key(|c| (c.0, c.1));
    for (_, x, mut comps, outside) in candidates {
        comps.sort_by_key(|c| std::cmp::Reverse(weight(c, &r_mask)));
        let (mut a, mut b) = (Vec::new(), Vec::new());
        let (mut wa, mut wb) = (0, 0);
        for comp in comps {
            let w = weight(&comp, &r_mask);
            if wa <= wb {
                wa += w;
                a.extend(comp);
            } else {
                wb += w;
                b.extend(comp);
            }
        }
        if 3 * wa <= 2 * outside && 3 * wb <= 2 * outside {
            a.sort_unstable();
            b.sort_unstable();
            return Ok(Separation {
                a,
                b,
                c: td.bags[x].clone(),
                bag: x,
            });
        }
    }
    Err(Error::NoBalancedBag)
}

fn weight(comp: &[usize], r: &Mask) -> usize {
    comp.iter().filter(|&&v| r.contains(v)).count()
}
