//! Parity-cone geometry for nearest-neighbour walks on Z^d, d ∈ {1, 2, 3}.
//!
//! The reachable set of a simple random walk at time r is the "parity cone"
//! {y : ‖y‖₁ ≤ r, ‖y‖₁ ≡ r (mod 2)}. Sites are kept in lexicographic order
//! of their coordinates, and indices are computed in closed form so the
//! transfer-matrix recursion never hashes.

use crate::error::{Error, Result};

/// Lattice point; coordinates beyond the active dimension are zero.
pub type Point = [i64; 3];

pub const MAX_DIM: usize = 3;

pub const ORIGIN: Point = [0, 0, 0];

#[inline]
pub fn l1_norm(p: &Point) -> i64 {
    p[0].abs() + p[1].abs() + p[2].abs()
}

#[inline]
pub fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// The 2d signed unit steps, in lexicographic order.
pub fn unit_steps(d: usize) -> Vec<Point> {
    let mut steps = Vec::with_capacity(2 * d);
    for k in 0..d {
        for s in [-1i64, 1] {
            let mut p = ORIGIN;
            p[k] = s;
            steps.push(p);
        }
    }
    steps.sort();
    steps
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 || d > MAX_DIM {
        return Err(Error::Config(format!(
            "unsupported dimension d = {d}; supported d ∈ {{1, 2, 3}}"
        )));
    }
    Ok(())
}

#[inline]
fn tri(m: i64) -> i64 {
    m * (m + 1) / 2
}

#[inline]
fn sq_pyramid(m: i64) -> i64 {
    m * (m + 1) * (2 * m + 1) / 6
}

/// Number of sites in the parity cone of radius `r` in dimension `d`.
pub fn cone_size(d: usize, r: usize) -> usize {
    let r = r as i64;
    (match d {
        1 => r + 1,
        2 => (r + 1) * (r + 1),
        3 => (r + 1) * (r + 1) + 2 * sq_pyramid(r),
        _ => panic!("dimension out of range"),
    }) as usize
}

// Sites preceding first coordinate `a` in the d = 2 cone of radius r.
#[inline]
fn prefix2(r: i64, a: i64) -> i64 {
    if a <= 0 {
        tri(r + a)
    } else {
        (r + 1) * (r + 1) - tri(r - a + 1)
    }
}

// Sites preceding first coordinate `a` in the d = 3 cone of radius r.
#[inline]
fn prefix3(r: i64, a: i64) -> i64 {
    if a <= 0 {
        sq_pyramid(r + a)
    } else {
        sq_pyramid(r) + (r + 1) * (r + 1) + (sq_pyramid(r) - sq_pyramid(r - a + 1))
    }
}

/// Index of `p` within the lexicographically ordered parity cone (d, r),
/// or `None` when `p` is off the cone (norm or parity mismatch, or a
/// nonzero coordinate beyond dimension `d`).
pub fn site_index(d: usize, r: usize, p: &Point) -> Option<usize> {
    let ri = r as i64;
    for k in d..MAX_DIM {
        if p[k] != 0 {
            return None;
        }
    }
    let norm = l1_norm(p);
    if norm > ri || (norm - ri) % 2 != 0 {
        return None;
    }
    let idx = match d {
        1 => (p[0] + ri) / 2,
        2 => {
            let a = p[0];
            let r1 = ri - a.abs();
            prefix2(ri, a) + (p[1] + r1) / 2
        }
        3 => {
            let a = p[0];
            let r1 = ri - a.abs();
            let b = p[1];
            let r2 = r1 - b.abs();
            prefix3(ri, a) + prefix2(r1, b) + (p[2] + r2) / 2
        }
        _ => return None,
    };
    Some(idx as usize)
}

/// Visit every site of the parity cone (d, r) in lexicographic order.
/// The callback receives (index, site).
pub fn for_each_site<F: FnMut(usize, Point)>(d: usize, r: usize, mut f: F) {
    let ri = r as i64;
    let mut idx = 0usize;
    match d {
        1 => {
            let mut a = -ri;
            while a <= ri {
                f(idx, [a, 0, 0]);
                idx += 1;
                a += 2;
            }
        }
        2 => {
            for a in -ri..=ri {
                let r1 = ri - a.abs();
                let mut b = -r1;
                while b <= r1 {
                    f(idx, [a, b, 0]);
                    idx += 1;
                    b += 2;
                }
            }
        }
        3 => {
            for a in -ri..=ri {
                let r1 = ri - a.abs();
                for b in -r1..=r1 {
                    let r2 = r1 - b.abs();
                    let mut c = -r2;
                    while c <= r2 {
                        f(idx, [a, b, c]);
                        idx += 1;
                        c += 2;
                    }
                }
            }
        }
        _ => panic!("dimension out of range"),
    }
}

/// All sites of the parity cone (d, r) in canonical order.
pub fn cone_sites(d: usize, r: usize) -> Vec<Point> {
    let mut sites = Vec::with_capacity(cone_size(d, r));
    for_each_site(d, r, |_, p| sites.push(p));
    sites
}

/// The parity-feasible lattice point nearest (in ℓ¹) to the real target
/// `n·x`, used to realize endpoint sequences x_n with x_n/n → x. Ties break
/// toward the lexicographically smallest candidate.
pub fn nearest_parity_point(d: usize, n: usize, x: &[f64; 3]) -> Result<Point> {
    check_dim(d)?;
    let target: [f64; 3] = [
        n as f64 * x[0],
        if d >= 2 { n as f64 * x[1] } else { 0.0 },
        if d >= 3 { n as f64 * x[2] } else { 0.0 },
    ];
    let mut base = ORIGIN;
    for k in 0..d {
        base[k] = target[k].round() as i64;
    }
    let mut candidates = vec![base];
    for k in 0..d {
        for s in [-1i64, 1] {
            let mut p = base;
            p[k] += s;
            candidates.push(p);
        }
    }
    candidates.sort();
    let dist = |p: &Point| -> f64 {
        (0..d).map(|k| (p[k] as f64 - target[k]).abs()).sum::<f64>()
    };
    let mut best: Option<(f64, Point)> = None;
    for p in candidates {
        if site_index(d, n, &p).is_none() {
            continue;
        }
        let dp = dist(&p);
        match best {
            Some((db, _)) if db <= dp => {}
            _ => best = Some((dp, p)),
        }
    }
    best.map(|(_, p)| p).ok_or_else(|| {
        Error::Domain(format!(
            "no parity-cone point near n·x for n = {n}, x = {:?}",
            &x[..d]
        ))
    })
}

/// Whether `n·x` is itself a lattice point of the correct parity, i.e. the
/// horizon belongs to the arithmetic progression along which the pointwise
/// rate-function limit is taken.
pub fn parity_exact(d: usize, n: usize, x: &[f64; 3]) -> bool {
    let mut p = ORIGIN;
    for k in 0..d.min(MAX_DIM) {
        let t = n as f64 * x[k];
        if (t - t.round()).abs() > 1e-9 {
            return false;
        }
        p[k] = t.round() as i64;
    }
    site_index(d, n, &p).is_some()
}
