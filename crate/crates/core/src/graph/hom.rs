use super::{EdgeOracle, Graph};

/// A vertex map `V(F) -> V(G)`, total on `V(F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    map: Vec<u32>,
}

impl Homomorphism {
    pub fn new(map: Vec<u32>) -> Self {
        Homomorphism { map }
    }

    pub fn identity(n: usize) -> Self {
        Homomorphism {
            map: (0..n as u32).collect(),
        }
    }

    #[inline]
    pub fn image(&self, v: u32) -> u32 {
        self.map[v as usize]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// True iff `phi` maps every edge of `f` onto an edge of `g` and is
/// injective on every neighborhood of `f`.
///
/// A map that is not total on `V(f)` or leaves `V(g)` is rejected.
pub fn is_locally_injective_hom<G: EdgeOracle + ?Sized>(
    f: &Graph,
    g: &G,
    phi: &Homomorphism,
) -> bool {
    if phi.len() != f.vertex_count() {
        return false;
    }
    let target_n = g.vertex_count() as u64;
    if phi.as_slice().iter().any(|&x| x as u64 >= target_n) {
        return false;
    }
    if !f
        .edges()
        .all(|(u, v)| g.has_edge(phi.image(u), phi.image(v)))
    {
        return false;
    }
    let mut images = Vec::new();
    f.vertices().all(|v| {
        images.clear();
        images.extend(f.neighbors(v).iter().map(|&w| phi.image(w)));
        images.sort_unstable();
        images.windows(2).all(|w| w[0] != w[1])
    })
}
