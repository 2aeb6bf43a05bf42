//! Derivative-free 1-D and n-D minimizers and a bracketing root finder.

use crate::real::Real;

/// Result of a 1-D minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum1d<T> {
    pub x: T,
    pub value: T,
    pub evaluations: usize,
}

/// Golden-section search for a minimum of a unimodal `f` on `[lo, hi]`,
/// stopping once the bracket is narrower than `tol`.
pub fn golden_section<T: Real, E>(
    mut f: impl FnMut(T) -> Result<T, E>,
    lo: T,
    hi: T,
    tol: T,
) -> Result<Minimum1d<T>, E> {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut evaluations = 2;
    while (b - a) > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
        evaluations += 1;
    }
    let (x, value) = if fc <= fd { (c, fc) } else { (d, fd) };
    Ok(Minimum1d { x, value, evaluations })
}

/// Bisection for a sign change of `f` on `[lo, hi]`; `None` when the endpoints
/// share a sign.
pub fn bisect<T: Real, E>(mut f: impl FnMut(T) -> Result<T, E>, lo: T, hi: T, tol: T) -> Result<Option<T>, E> {
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a)?;
    let fb = f(b)?;
    if fa == T::zero() {
        return Ok(Some(a));
    }
    if fb == T::zero() {
        return Ok(Some(b));
    }
    if (fa > T::zero()) == (fb > T::zero()) {
        return Ok(None);
    }
    while (b - a).abs() > tol {
        let m = (a + b) * T::lit(0.5);
        let fm = f(m)?;
        if (fm > T::zero()) == (fa > T::zero()) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(Some((a + b) * T::lit(0.5)))
}

/// Outcome of a Nelder–Mead run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult<T> {
    pub x: Vec<T>,
    pub value: T,
    pub iterations: usize,
    pub converged: bool,
}

/// Nelder–Mead simplex with standard coefficients (reflect 1, expand 2,
/// contract ½, shrink ½). Converges when every vertex lies within `xtol`
/// (max-norm) of the best one.
pub fn nelder_mead<T: Real, E>(
    mut f: impl FnMut(&[T]) -> Result<T, E>,
    start: &[T],
    steps: &[T],
    xtol: T,
    max_iter: usize,
) -> Result<SimplexResult<T>, E> {
    let n = start.len();
    assert_eq!(steps.len(), n, "one initial step per coordinate");
    let half = T::lit(0.5);
    let two = T::lit(2.0);

    let mut simplex: Vec<(Vec<T>, T)> = Vec::with_capacity(n + 1);
    simplex.push((start.to_vec(), f(start)?));
    for k in 0..n {
        let mut p = start.to_vec();
        p[k] += steps[k];
        let v = f(&p)?;
        simplex.push((p, v));
    }

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
        let spread = simplex[1..]
            .iter()
            .flat_map(|(p, _)| p.iter().zip(&simplex[0].0).map(|(a, b)| (*a - *b).abs()))
            .fold(T::zero(), |acc, d| acc.max(d));
        if spread <= xtol {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid: Vec<T> = (0..n)
            .map(|k| simplex[..n].iter().fold(T::zero(), |acc, (p, _)| acc + p[k]) / T::from_usize_lossy(n))
            .collect();
        let worst = simplex[n].clone();
        let along = |t: T| -> Vec<T> { (0..n).map(|k| centroid[k] + t * (worst.0[k] - centroid[k])).collect() };

        let reflected = along(-T::one());
        let fr = f(&reflected)?;
        if fr < simplex[0].1 {
            let expanded = along(-two);
            let fe = f(&expanded)?;
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
            continue;
        }
        let (contracted, fc) = if fr < worst.1 {
            let p = along(-half);
            let v = f(&p)?;
            (p, v)
        } else {
            let p = along(half);
            let v = f(&p)?;
            (p, v)
        };
        if fc < worst.1.min(fr) {
            simplex[n] = (contracted, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for vertex in simplex.iter_mut().skip(1) {
            let p: Vec<T> = (0..n).map(|k| best[k] + half * (vertex.0[k] - best[k])).collect();
            let v = f(&p)?;
            *vertex = (p, v);
        }
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal));
    let (x, value) = simplex.swap_remove(0);
    Ok(SimplexResult { x, value, iterations, converged })
}
