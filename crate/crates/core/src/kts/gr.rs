//! The graphs `G(r)` for `μ = −1`: `K_{t,s}` on `V ∪ W`, cliques `V_i`
//! hanging off each `v_i` and cliques `W_j` off each `w_j`.

use serde::Serialize;

use crate::algebra::AlgebraicNumber;
use crate::engine::{make_context, verify_star_pair, StarSolution};
use crate::error::{Error, Result};
use crate::graph::{canonical, Graph, CANONICAL_MAX_ORDER};

use super::make_kts;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GrParams {
    pub t: usize,
    pub s: usize,
    pub r: usize,
    /// `|V_i| = (r+1)(s−1)/(ts−1) − 1`.
    pub vi_size: usize,
    /// `|W_j| = (r+1)(t−1)/(ts−1) − 1`.
    pub wi_size: usize,
}

impl GrParams {
    pub fn order(&self) -> usize {
        self.t + self.s + self.t * self.vi_size + self.s * self.wi_size
    }

    pub fn star_set_size(&self) -> usize {
        self.t * self.vi_size + self.s * self.wi_size
    }
}

pub fn gr_params(t: usize, s: usize, r: usize) -> Result<GrParams> {
    if t < 2 || s < t {
        return Err(Error::Invalid(format!("G(r) needs s >= t >= 2, got t={t}, s={s}")));
    }
    let d = t * s - 1;
    let (nv, nw) = ((r + 1) * (s - 1), (r + 1) * (t - 1));
    if nv % d != 0 || nw % d != 0 || nv < d || nw < d {
        return Err(Error::DivisibilityViolation { t, s, r });
    }
    let (vi, wi) = (nv / d - 1, nw / d - 1);
    debug_assert_eq!(r, s + vi + s * wi);
    debug_assert_eq!(r, t + t * vi + wi);
    Ok(GrParams {
        t,
        s,
        r,
        vi_size: vi,
        wi_size: wi,
    })
}

/// `G(r)` with `K_{t,s}` on `0..t+s` (`v_i = i`, `w_j = t + j`), then the
/// blocks `V_0, …, V_{t−1}, W_0, …, W_{s−1}`; the star set for `−1` is
/// every vertex past `t + s`.
pub fn build_gr(t: usize, s: usize, r: usize) -> Result<StarSolution> {
    let p = gr_params(t, s, r)?;
    let q = t + s;
    let n = p.order();
    let v_block = |i: usize| q + i * p.vi_size..q + (i + 1) * p.vi_size;
    let w_start = q + t * p.vi_size;
    let w_block = |j: usize| w_start + j * p.wi_size..w_start + (j + 1) * p.wi_size;

    let mut g = Graph::empty(n);
    for v in 0..t {
        for w in t..q {
            g.add_edge(v, w);
        }
    }
    for i in 0..t {
        for x in v_block(i) {
            g.add_edge(x, i);
            for w in t..q {
                g.add_edge(x, w);
            }
            for y in x + 1..v_block(i).end {
                g.add_edge(x, y);
            }
            for y in w_start..n {
                g.add_edge(x, y);
            }
        }
    }
    for j in 0..s {
        for x in w_block(j) {
            g.add_edge(x, t + j);
            for v in 0..t {
                g.add_edge(x, v);
            }
            for y in x + 1..w_block(j).end {
                g.add_edge(x, y);
            }
        }
    }
    debug_assert_eq!(g.regular_degree(), Some(r));

    let mu = AlgebraicNumber::from_int(-1);
    let ctx = make_context(make_kts(t, s), mu.clone(), Some((t, s)))?;
    let xs: Vec<usize> = (q..n).collect();
    let star_set = xs
        .iter()
        .map(|&x| ctx.candidate((0..q).filter(|&h| g.has_edge(x, h)).fold(0u64, |m, h| m | 1 << h)))
        .collect();
    let canonical = if n <= CANONICAL_MAX_ORDER {
        Some(canonical(&g)?)
    } else {
        None
    };
    Ok(StarSolution {
        star_set,
        ax: g.induced_subgraph(&xs),
        certificate: verify_star_pair(&g, &xs, &mu),
        graph: g,
        canonical,
    })
}
