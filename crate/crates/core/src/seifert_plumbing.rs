//! Star-shaped plumbings bounding Brieskorn and Seifert homology spheres, and
//! the Neumann–Siebenmann invariant μ̄ computed from them.
//!
//! Σ(a₁, …, aₙ) bounds the plumbing with central weight e₀ and one chain per
//! fibre, the i-th chain read off the negative continued fraction of aᵢ/bᵢ,
//! where (a/aᵢ)·bᵢ ≡ −1 (mod aᵢ) and e₀ = (−1 − Σ(a/aᵢ)bᵢ)/a for a = ∏aⱼ.
//! This is the negative-definite side; μ̄ = (σ(P) − wᵀPw)/8 with w the Wu class.

use crate::linalg::{solve_mod2, Inertia};
use crate::{ZMatrix, Q, Z};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlumbingError {
    #[error("NonCoprime: gcd({a}, {b}) ≠ 1")]
    NonCoprime { a: i64, b: i64 },
    #[error("InvalidSeifert: {0}")]
    InvalidSeifert(String),
    #[error("NotHomologySphere: det(P) = {det}")]
    NotHomologySphere { det: Z },
    #[error("NotDivisibleBy8: σ(P) − wᵀPw = {value}")]
    NotDivisibleBy8 { value: Z },
}

impl PlumbingError {
    pub fn kind(&self) -> &'static str {
        match self {
            PlumbingError::NonCoprime { .. } => "NonCoprime",
            PlumbingError::InvalidSeifert(_) => "InvalidSeifert",
            PlumbingError::NotHomologySphere { .. } => "NotHomologySphere",
            PlumbingError::NotDivisibleBy8 { .. } => "NotDivisibleBy8",
        }
    }
}

/// Σ(a₁, …, aₙ) with an orientation sign; +1 is the link-of-singularity side.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertData {
    multiplicities: Vec<i64>,
    orientation: i8,
}

impl SeifertData {
    pub fn new(multiplicities: Vec<i64>, orientation: i8) -> Result<Self, PlumbingError> {
        if multiplicities.len() < 3 {
            return Err(PlumbingError::InvalidSeifert(format!(
                "need at least three fibres, got {}",
                multiplicities.len()
            )));
        }
        if let Some(a) = multiplicities.iter().find(|&&a| a < 2) {
            return Err(PlumbingError::InvalidSeifert(format!("multiplicity {a} < 2")));
        }
        if orientation != 1 && orientation != -1 {
            return Err(PlumbingError::InvalidSeifert(format!("orientation {orientation} ∉ {{±1}}")));
        }
        for (i, &a) in multiplicities.iter().enumerate() {
            for &b in &multiplicities[i + 1..] {
                if a.gcd(&b) != 1 {
                    return Err(PlumbingError::NonCoprime { a, b });
                }
            }
        }
        Ok(SeifertData {
            multiplicities,
            orientation,
        })
    }

    /// Σ(a₁, a₂, a₃) with its standard orientation.
    pub fn brieskorn(a1: i64, a2: i64, a3: i64) -> Result<Self, PlumbingError> {
        SeifertData::new(vec![a1, a2, a3], 1)
    }

    pub fn multiplicities(&self) -> &[i64] {
        &self.multiplicities
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn reversed(&self) -> Self {
        SeifertData {
            multiplicities: self.multiplicities.clone(),
            orientation: -self.orientation,
        }
    }

    /// Whether some multiplicity is even, as needed for the involution.
    pub fn has_even_fibre(&self) -> bool {
        self.multiplicities.iter().any(|a| a % 2 == 0)
    }
}

/// A weighted tree; vertex 0 is the centre, and chains hang off it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingGraph {
    weights: Vec<i64>,
    edges: Vec<(usize, usize)>,
}

/// Mod-2 characteristic vector of a unimodular form, lifted to {0, 1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WuClass(pub Vec<u8>);

/// Negative continued fraction a/b = k₁ − 1/(k₂ − …), every kᵢ ≥ 2 when
/// 0 < b < a. Larger b gives leading ones.
pub fn negative_continued_fraction(a: i64, b: i64) -> Vec<i64> {
    let (mut a, mut b) = (a, b);
    let mut out = Vec::new();
    while b != 0 {
        let k = Integer::div_ceil(&a, &b);
        out.push(k);
        (a, b) = (b, k * b - a);
    }
    out
}

impl PlumbingGraph {
    /// A star with the given central weight and chains, each chain listed
    /// from the vertex adjacent to the centre outwards.
    pub fn star(central: i64, legs: &[Vec<i64>]) -> Self {
        let mut weights = vec![central];
        let mut edges = Vec::new();
        for leg in legs {
            let mut prev = 0;
            for &w in leg {
                let v = weights.len();
                weights.push(w);
                edges.push((prev, v));
                prev = v;
            }
        }
        PlumbingGraph { weights, edges }
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn central_weight(&self) -> i64 {
        self.weights[0]
    }

    pub fn intersection_matrix(&self) -> ZMatrix {
        let n = self.rank();
        let mut p = vec![vec![Z::zero(); n]; n];
        for (i, &w) in self.weights.iter().enumerate() {
            p[i][i] = Z::from(w);
        }
        for &(u, v) in &self.edges {
            p[u][v] = Z::one();
            p[v][u] = Z::one();
        }
        p
    }

    /// Blows up the edge with the given index: a new (−1)-vertex is inserted
    /// between its ends, whose weights drop by one. The boundary is unchanged.
    pub fn blow_up_edge(&self, edge: usize) -> Self {
        let mut g = self.clone();
        let (u, v) = g.edges[edge];
        let new = g.weights.len();
        g.weights.push(-1);
        g.weights[u] -= 1;
        g.weights[v] -= 1;
        g.edges[edge] = (u, new);
        g.edges.push((new, v));
        g
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.rank()];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Inertia and determinant by leaf elimination over ℚ.
    ///
    /// A leaf v with weight x ≠ 0 splits off as ⟨x⟩ and its neighbour's weight
    /// drops by 1/x. A leaf of weight 0 spans a hyperbolic plane with its
    /// neighbour p, and the remaining neighbours of p detach unchanged.
    pub fn inertia_and_det(&self) -> (Inertia, Q) {
        let n = self.rank();
        let adj = self.adjacency();
        let mut w: Vec<Q> = self.weights.iter().map(|&x| Q::from_integer(Z::from(x))).collect();
        let mut alive = vec![true; n];
        let mut deg: Vec<usize> = adj.iter().map(|a| a.len()).collect();
        let mut inertia = Inertia::default();
        let mut det = Q::one();
        let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
        let remove = |v: usize, alive: &mut Vec<bool>, deg: &mut Vec<usize>, stack: &mut Vec<usize>| {
            alive[v] = false;
            for &u in &adj[v] {
                if alive[u] {
                    deg[u] -= 1;
                    if deg[u] <= 1 {
                        stack.push(u);
                    }
                }
            }
        };
        while let Some(v) = stack.pop() {
            if !alive[v] || deg[v] > 1 {
                continue;
            }
            let parent = adj[v].iter().copied().find(|&u| alive[u]);
            if w[v].is_zero() {
                match parent {
                    None => {
                        inertia.zero += 1;
                        det = Q::zero();
                        remove(v, &mut alive, &mut deg, &mut stack);
                    }
                    Some(p) => {
                        inertia.pos += 1;
                        inertia.neg += 1;
                        det = -det;
                        remove(v, &mut alive, &mut deg, &mut stack);
                        remove(p, &mut alive, &mut deg, &mut stack);
                    }
                }
                continue;
            }
            if w[v].is_positive() {
                inertia.pos += 1;
            } else {
                inertia.neg += 1;
            }
            det *= &w[v];
            if let Some(p) = parent {
                let inv = w[v].recip();
                w[p] -= inv;
            }
            remove(v, &mut alive, &mut deg, &mut stack);
        }
        debug_assert!(alive.iter().all(|a| !a), "every tree has a leaf");
        (inertia, det)
    }

    /// Wu class of the intersection form.
    pub fn wu_class(&self) -> Option<WuClass> {
        wu_class(&self.intersection_matrix())
    }

    /// wᵀPw for a vector supported on the vertices.
    pub fn square(&self, x: &[u8]) -> Z {
        let mut s: i64 = self
            .weights
            .iter()
            .zip(x)
            .map(|(&w, &xi)| w * xi as i64)
            .sum();
        for &(u, v) in &self.edges {
            s += 2 * x[u] as i64 * x[v] as i64;
        }
        Z::from(s)
    }
}

/// The plumbing with least positive bᵢ.
pub fn build_plumbing(d: &SeifertData) -> Result<PlumbingGraph, PlumbingError> {
    build_plumbing_shifted(d, &vec![0; d.multiplicities.len()])
}

/// The plumbing with bᵢ replaced by bᵢ + shiftᵢ·aᵢ (shiftᵢ ≥ 0). The central
/// weight absorbs the change, so the boundary is the same Seifert space.
pub fn build_plumbing_shifted(d: &SeifertData, shifts: &[i64]) -> Result<PlumbingGraph, PlumbingError> {
    let a_all: Z = d.multiplicities.iter().map(|&a| Z::from(a)).product();
    let mut sum = Z::zero();
    let mut legs = Vec::new();
    for (&ai, &shift) in d.multiplicities.iter().zip(shifts) {
        let cofactor = &a_all / Z::from(ai);
        let c = i64::try_from(cofactor.mod_floor(&Z::from(ai))).expect("residue fits i64");
        // c·b ≡ −1 (mod aᵢ)
        let inv = modinv(c, ai).ok_or(PlumbingError::InvalidSeifert(format!("cofactor not invertible mod {ai}")))?;
        let b = (-inv).rem_euclid(ai) + shift * ai;
        sum += &cofactor * Z::from(b);
        legs.push(negative_continued_fraction(ai, b).into_iter().map(|k| -k).collect::<Vec<_>>());
    }
    let num = -Z::one() - sum;
    if !num.is_multiple_of(&a_all) {
        return Err(PlumbingError::InvalidSeifert("Euler number is not −1/a".into()));
    }
    let e0 = i64::try_from(num / a_all).map_err(|_| PlumbingError::InvalidSeifert("central weight overflow".into()))?;
    let g = PlumbingGraph::star(e0, &legs);
    let (_, det) = g.inertia_and_det();
    if det.abs() != Q::one() {
        return Err(PlumbingError::NotHomologySphere { det: det.to_integer() });
    }
    Ok(g)
}

fn modinv(c: i64, m: i64) -> Option<i64> {
    let e = c.extended_gcd(&m);
    (e.gcd == 1).then(|| e.x.rem_euclid(m))
}

/// The unique x ∈ {0,1}ⁿ with P·x ≡ diag(P) (mod 2), for det(P) odd.
pub fn wu_class(p: &ZMatrix) -> Option<WuClass> {
    let diag: Vec<bool> = (0..p.len()).map(|i| p[i][i].is_odd()).collect();
    solve_mod2(p, &diag).map(|x| WuClass(x.into_iter().map(u8::from).collect()))
}

/// μ̄ of the boundary of a unimodular plumbing tree.
pub fn mu_bar_of_graph(g: &PlumbingGraph) -> Result<i64, PlumbingError> {
    let (inertia, det) = g.inertia_and_det();
    if det.abs() != Q::one() {
        return Err(PlumbingError::NotHomologySphere { det: det.to_integer() });
    }
    let w = g.wu_class().expect("odd determinant");
    let value = Z::from(inertia.signature()) - g.square(&w.0);
    if !value.is_multiple_of(&Z::from(8)) {
        return Err(PlumbingError::NotDivisibleBy8 { value });
    }
    Ok(i64::try_from(value / Z::from(8)).expect("μ̄ fits i64"))
}

/// μ̄(Σ(a₁, …, aₙ)), negated for the reversed orientation.
pub fn mu_bar(d: &SeifertData) -> Result<i64, PlumbingError> {
    let g = build_plumbing(d)?;
    let (inertia, _) = g.inertia_and_det();
    if inertia.neg != g.rank() {
        return Err(PlumbingError::InvalidSeifert("canonical plumbing is not negative definite".into()));
    }
    Ok(d.orientation as i64 * mu_bar_of_graph(&g)?)
}
