use crate::linalg::CMatrix;
use crate::real::Real;

/// Below this overlap² a label is considered hybridized and the warn flag is raised.
pub const WARN_QUALITY: f64 = 0.6;
/// Below this overlap² the dispersive picture is abandoned for the label.
pub const RESONANT_QUALITY: f64 = 0.25;

/// Map from bare product labels `|i, n⟩` to dressed eigenstates.
#[derive(Debug, Clone, PartialEq)]
pub struct DressedLevels<T> {
    pub kept_levels: usize,
    pub resonator_levels: usize,
    /// Dressed eigenvalues, ascending.
    pub energies: Vec<T>,
    /// Label index `i·m + n` → dressed index.
    pub assignment: Vec<usize>,
    /// Label index → overlap² with its dressed state.
    pub quality: Vec<T>,
    pub warn: bool,
}

impl<T: Real> DressedLevels<T> {
    pub fn label_index(&self, i: usize, n: usize) -> usize {
        i * self.resonator_levels + n
    }

    pub fn energy(&self, i: usize, n: usize) -> T {
        self.energies[self.assignment[self.label_index(i, n)]]
    }

    pub fn quality(&self, i: usize, n: usize) -> T {
        self.quality[self.label_index(i, n)]
    }

    pub fn dressed_index(&self, i: usize, n: usize) -> usize {
        self.assignment[self.label_index(i, n)]
    }
}

/// Greedy labeling: pairs (bare, dressed) are taken in order of decreasing
/// overlap², skipping any whose bare label or dressed state is already used.
///
/// `vectors` holds the dressed eigenstates as columns in the product basis.
pub fn assign_dressed_levels<T: Real>(
    energies: Vec<T>,
    vectors: &CMatrix<T>,
    kept_levels: usize,
    resonator_levels: usize,
) -> DressedLevels<T> {
    let dim = kept_levels * resonator_levels;
    debug_assert_eq!(vectors.nrows(), dim);

    let mut pairs: Vec<(T, usize, usize)> = Vec::with_capacity(dim * dim);
    for d in 0..dim {
        for b in 0..dim {
            let w = vectors[(b, d)].norm_sqr();
            if w > T::zero() {
                pairs.push((w, b, d));
            }
        }
    }
    pairs.sort_by(|x, y| {
        y.0.partial_cmp(&x.0).unwrap_or(std::cmp::Ordering::Equal).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2))
    });

    let mut assignment = vec![usize::MAX; dim];
    let mut quality = vec![T::zero(); dim];
    let mut taken = vec![false; dim];
    let mut remaining = dim;
    for (w, b, d) in pairs {
        if remaining == 0 {
            break;
        }
        if assignment[b] != usize::MAX || taken[d] {
            continue;
        }
        assignment[b] = d;
        quality[b] = w;
        taken[d] = true;
        remaining -= 1;
    }
    // Only reachable if some overlaps are exactly zero; pair leftovers in order.
    if remaining > 0 {
        let mut free = (0..dim).filter(|&d| !taken[d]);
        for b in 0..dim {
            if assignment[b] == usize::MAX {
                let d = free.next().expect("as many free states as labels");
                assignment[b] = d;
                quality[b] = vectors[(b, d)].norm_sqr();
            }
        }
    }

    let warn_at = T::lit(WARN_QUALITY);
    let warn = quality.iter().any(|&q| q < warn_at);
    DressedLevels { kept_levels, resonator_levels, energies, assignment, quality, warn }
}
