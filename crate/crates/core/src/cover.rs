//! Cover certificates: a host graph, guest graphs with vertex maps into it,
//! and the claims the certificate makes about itself. Verification recomputes
//! everything from the maps; restriction cuts a cover down to a subgraph of
//! the host.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::classes::GuestClass;
use crate::graph::{disjoint_union, Graph};
use crate::iso::{check_embedding, is_weak_induced_embedding, EmbeddingError};

/// The four covering numbers a certificate or query can be about, ordered
/// from most to least restrictive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Variant {
    Global,
    Union,
    Local,
    Folded,
}

impl Variant {
    pub const ALL: [Variant; 4] =
        [Variant::Global, Variant::Union, Variant::Local, Variant::Folded];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Global => "global",
            Variant::Union => "union",
            Variant::Local => "local",
            Variant::Folded => "folded",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What a certificate asserts about itself. Locality and globality are upper
/// bounds. The injective flag promises that every map is injective when set;
/// when clear it promises nothing, so an injective cover claiming false is
/// merely understating its structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claims {
    pub class_name: String,
    pub injective: bool,
    pub locality: usize,
    pub globality: usize,
    /// Partition of guest indices; guests sharing a layer must have pairwise
    /// disjoint images. When present, globality counts layers, not guests.
    pub union_layers: Option<Vec<Vec<usize>>>,
}

/// A cover certificate. Each guest comes with its vertex map into the host:
/// `map[v]` is the host vertex guest vertex `v` lands on. Guests are stored
/// fully so that verification needs nothing beyond a membership predicate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub host: Graph,
    pub guests: Vec<(Graph, Vec<usize>)>,
    pub claims: Claims,
}

/// Everything verification computed. The achieved numbers come from the maps
/// alone, never from the claims.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub valid: bool,
    pub achieved_locality: usize,
    pub achieved_globality: usize,
    pub injective: bool,
    pub guest_membership: Vec<bool>,
    pub diagnostics: Vec<String>,
}

/// Check a certificate with every guest required to be a single class member.
pub fn verify_cover(c: &Cover, class: &GuestClass) -> Report {
    verify_with(c, class, false)
}

/// Check a certificate with every guest required to lie in the union closure
/// of the class, i.e. to be a disjoint union of members. Covers restricted to
/// weak induced subgraphs are checked this way.
pub fn verify_cover_union_closure(c: &Cover, class: &GuestClass) -> Report {
    verify_with(c, class, true)
}

fn verify_with(c: &Cover, class: &GuestClass, union_closure: bool) -> Report {
    let mut diags: Vec<String> = Vec::new();
    let mut valid = true;
    let host = &c.host;

    if c.claims.class_name != class.name() {
        diags.push(format!(
            "note: claims name class '{}', verifying against '{}'",
            c.claims.class_name,
            class.name()
        ));
    }

    // Maps must be homomorphisms into the host. A guest whose map is broken
    // is skipped by the dependent checks below.
    let mut maps_ok: Vec<bool> = Vec::with_capacity(c.guests.len());
    for (i, (g, map)) in c.guests.iter().enumerate() {
        let ok = check_map(i, g, map, host, &mut diags);
        if !ok {
            valid = false;
        }
        maps_ok.push(ok);
    }

    // Edge-surjectivity: every host edge needs a preimage in some guest.
    let mut covered: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (i, (g, map)) in c.guests.iter().enumerate() {
        if !maps_ok[i] {
            continue;
        }
        for (u, v) in g.edges() {
            let (a, b) = (map[u].min(map[v]), map[u].max(map[v]));
            covered.insert((a, b));
        }
    }
    if let Some(&(a, b)) = host.edge_set().iter().find(|e| !covered.contains(e)) {
        diags.push(format!("host edge ({a}, {b}) is not covered by any guest"));
        valid = false;
    }

    // Injectivity is computed per map, over the intact maps.
    let mut injective = true;
    let mut offender: Option<(usize, usize, usize, usize)> = None;
    for (i, (_, map)) in c.guests.iter().enumerate() {
        if !maps_ok[i] {
            continue;
        }
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        for (v, &h) in map.iter().enumerate() {
            if let Some(&u) = seen.get(&h) {
                injective = false;
                offender.get_or_insert((i, u, v, h));
                break;
            }
            seen.insert(h, v);
        }
    }
    if c.claims.injective && !injective {
        let (i, u, v, h) = offender.expect("non-injective map recorded");
        diags.push(format!(
            "claimed injective, but guest {i} maps vertices {u} and {v} both to host vertex {h}"
        ));
        valid = false;
    } else if !c.claims.injective && injective && !c.guests.is_empty() {
        diags.push("note: every map is injective although the claims do not say so".into());
    }

    // Locality: total preimage count per host vertex.
    let mut achieved_locality = 0;
    if host.n() > 0 {
        let mut load = vec![0usize; host.n()];
        for (i, (_, map)) in c.guests.iter().enumerate() {
            if !maps_ok[i] {
                continue;
            }
            for &h in map {
                load[h] += 1;
            }
        }
        let v = (0..host.n()).max_by_key(|&v| load[v]).unwrap();
        achieved_locality = load[v];
        if achieved_locality > c.claims.locality {
            diags.push(format!(
                "host vertex {v} has {} preimages, claimed locality is {}",
                load[v], c.claims.locality
            ));
            valid = false;
        }
    }

    // Globality counts guests, or layers when a layering is given.
    let mut achieved_globality = c.guests.len();
    if let Some(layers) = &c.claims.union_layers {
        if !check_layers(c, layers, &maps_ok, &mut diags) {
            valid = false;
        }
        achieved_globality = layers.len();
    }
    if achieved_globality > c.claims.globality {
        diags.push(format!(
            "cover has {} {}, claimed globality is {}",
            achieved_globality,
            if c.claims.union_layers.is_some() { "layers" } else { "guests" },
            c.claims.globality
        ));
        valid = false;
    }

    let guest_membership: Vec<bool> = c
        .guests
        .iter()
        .map(|(g, _)| {
            if union_closure {
                class.union_closure_member(g)
            } else {
                class.is_member(g)
            }
        })
        .collect();
    if let Some(i) = guest_membership.iter().position(|&m| !m) {
        diags.push(format!(
            "guest {i} is not {} '{}'",
            if union_closure { "in the union closure of class" } else { "a member of class" },
            class.name()
        ));
        valid = false;
    }

    Report {
        valid,
        achieved_locality,
        achieved_globality,
        injective,
        guest_membership,
        diagnostics: diags,
    }
}

fn check_map(i: usize, g: &Graph, map: &[usize], host: &Graph, diags: &mut Vec<String>) -> bool {
    if map.len() != g.n() {
        diags.push(format!(
            "guest {i}: map has {} entries for {} vertices",
            map.len(),
            g.n()
        ));
        return false;
    }
    if let Some(&bad) = map.iter().find(|&&h| h >= host.n()) {
        diags.push(format!(
            "guest {i}: map targets vertex {bad}, host has {} vertices",
            host.n()
        ));
        return false;
    }
    for (u, v) in g.edges() {
        if map[u] == map[v] {
            diags.push(format!(
                "guest {i}: edge ({u}, {v}) collapses onto host vertex {}",
                map[u]
            ));
            return false;
        }
        if !host.has_edge(map[u], map[v]) {
            diags.push(format!(
                "guest {i}: edge ({u}, {v}) not preserved, ({}, {}) is no host edge",
                map[u], map[v]
            ));
            return false;
        }
    }
    true
}

fn check_layers(
    c: &Cover,
    layers: &[Vec<usize>],
    maps_ok: &[bool],
    diags: &mut Vec<String>,
) -> bool {
    // The layers must partition the guest indices.
    let mut seen = vec![false; c.guests.len()];
    let mut ok = true;
    for (j, layer) in layers.iter().enumerate() {
        if layer.is_empty() {
            diags.push(format!("layer {j} is empty"));
            ok = false;
        }
        for &gi in layer {
            if gi >= c.guests.len() {
                diags.push(format!(
                    "layer {j} references guest {gi}, cover has {} guests",
                    c.guests.len()
                ));
                ok = false;
            } else if seen[gi] {
                diags.push(format!("guest {gi} appears in more than one layer"));
                ok = false;
            } else {
                seen[gi] = true;
            }
        }
        if !ok {
            return false;
        }
    }
    if let Some(gi) = seen.iter().position(|&s| !s) {
        diags.push(format!("guest {gi} belongs to no layer"));
        return false;
    }

    // Guests within a layer must occupy disjoint host vertices.
    for (j, layer) in layers.iter().enumerate() {
        let mut image: BTreeMap<usize, usize> = BTreeMap::new();
        for &gi in layer {
            if !maps_ok[gi] {
                continue;
            }
            for &h in &c.guests[gi].1 {
                if let Some(&other) = image.get(&h) {
                    diags.push(format!(
                        "layer {j}: guests {other} and {gi} both occupy host vertex {h}"
                    ));
                    return false;
                }
                image.insert(h, gi);
            }
        }
    }
    true
}

/// How to cut a cover down to a subgraph of its host.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RestrictMode {
    /// Any subgraph; guests lose the edges that leave it. Needs a monotone
    /// class.
    Subgraph,
    /// An induced subgraph; guests are induced on the preimage of its vertex
    /// set. Needs heredity, isolated vertices aside.
    Induced,
    /// A subgraph whose components are each induced in the host. Guests are
    /// cut per component and reunited, so they end up in the union closure;
    /// that closure step is free for every covering number except global,
    /// hence the caller declares which number the bound is for.
    WeakInduced { target: Variant },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RestrictError {
    #[error("subgraph restriction needs a monotone class, '{0}' is not monotone")]
    NotMonotone(String),
    #[error("restriction to induced pieces needs a class hereditary up to isolated vertices, '{0}' is not")]
    NotHereditary(String),
    #[error("weak induced restriction bounds union, local and folded numbers only, not global")]
    GlobalTarget,
    #[error("embedding does not realize the subgraph: {0}")]
    BadEmbedding(#[from] EmbeddingError),
    #[error("embedding is not induced: host edge ({0}, {1}) is missing from the subgraph")]
    NotInduced(usize, usize),
    #[error("embedding is not weak induced: a component misses a host edge between its vertices")]
    NotWeakInduced,
}

/// Restrict a cover of `host` to the subgraph realized by `embedding`: sub
/// vertex `v` sits at host vertex `embedding[v]`. Guests are cut down to what
/// maps into the subgraph; vertices left isolated are dropped and guests left
/// empty disappear, so locality and globality never grow. The returned cover
/// lives on `sub` in sub's own vertex numbering.
///
/// The restricted guests of the subgraph and induced modes verify against the
/// class itself; weak induced restriction splits guests per component of
/// `sub`, so its output verifies against the union closure.
pub fn restrict_cover(
    c: &Cover,
    class: &GuestClass,
    sub: &Graph,
    embedding: &[usize],
    mode: RestrictMode,
) -> Result<Cover, RestrictError> {
    match mode {
        RestrictMode::Subgraph => {
            if !class.flags().monotone {
                return Err(RestrictError::NotMonotone(class.name().to_string()));
            }
        }
        RestrictMode::Induced | RestrictMode::WeakInduced { .. } => {
            if let RestrictMode::WeakInduced { target: Variant::Global } = mode {
                return Err(RestrictError::GlobalTarget);
            }
            if !class.hereditary_mod_isolated() {
                return Err(RestrictError::NotHereditary(class.name().to_string()));
            }
        }
    }

    check_embedding(sub, &c.host, embedding)?;
    match mode {
        RestrictMode::Subgraph => {}
        RestrictMode::Induced => {
            for u in 0..sub.n() {
                for v in u + 1..sub.n() {
                    if !sub.has_edge(u, v) && c.host.has_edge(embedding[u], embedding[v]) {
                        return Err(RestrictError::NotInduced(embedding[u], embedding[v]));
                    }
                }
            }
        }
        RestrictMode::WeakInduced { .. } => {
            if !is_weak_induced_embedding(sub, &c.host, embedding)? {
                return Err(RestrictError::NotWeakInduced);
            }
        }
    }

    // Host vertex -> sub vertex, for rebasing the maps.
    let mut inv: Vec<Option<usize>> = vec![None; c.host.n()];
    for (x, &h) in embedding.iter().enumerate() {
        inv[h] = Some(x);
    }
    let sub_edges_host: BTreeSet<(usize, usize)> = sub
        .edges()
        .map(|(a, b)| {
            let (x, y) = (embedding[a], embedding[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    let sub_comps: Vec<BTreeSet<usize>> = sub
        .components()
        .iter()
        .map(|comp| comp.iter().map(|&x| embedding[x]).collect())
        .collect();

    let mut guests: Vec<(Graph, Vec<usize>)> = Vec::new();
    let mut survivor: Vec<Option<usize>> = Vec::with_capacity(c.guests.len());
    for (g, map) in &c.guests {
        let cut = match mode {
            RestrictMode::Subgraph => cut_to_edges(g, map, &sub_edges_host, &inv),
            RestrictMode::Induced => {
                let keep: BTreeSet<usize> = embedding.iter().copied().collect();
                cut_to_vertices(g, map, &keep, &inv)
            }
            RestrictMode::WeakInduced { .. } => {
                // One induced piece per sub component, reunited into a single
                // guest so the guest count is unchanged.
                let pieces: Vec<(Graph, Vec<usize>)> = sub_comps
                    .iter()
                    .filter_map(|hs| cut_to_vertices(g, map, hs, &inv))
                    .collect();
                if pieces.is_empty() {
                    None
                } else {
                    let graphs: Vec<Graph> = pieces.iter().map(|(p, _)| p.clone()).collect();
                    let (ug, offsets) = disjoint_union(&graphs);
                    let mut nmap = vec![0usize; ug.n()];
                    for (j, (p, pm)) in pieces.iter().enumerate() {
                        for k in 0..p.n() {
                            nmap[offsets[j] + k] = pm[k];
                        }
                    }
                    Some((ug, nmap))
                }
            }
        };
        match cut {
            Some(gm) => {
                survivor.push(Some(guests.len()));
                guests.push(gm);
            }
            None => survivor.push(None),
        }
    }

    let union_layers = c
        .claims
        .union_layers
        .as_ref()
        .map(|layers| {
            layers
                .iter()
                .filter_map(|layer| {
                    let l: Vec<usize> = layer
                        .iter()
                        .filter_map(|&gi| survivor.get(gi).copied().flatten())
                        .collect();
                    if l.is_empty() {
                        None
                    } else {
                        Some(l)
                    }
                })
                .collect::<Vec<_>>()
        })
        .filter(|ls| !ls.is_empty());

    let injective = guests
        .iter()
        .all(|(_, m)| m.iter().collect::<BTreeSet<_>>().len() == m.len());
    Ok(Cover {
        host: sub.clone(),
        guests,
        claims: Claims {
            class_name: c.claims.class_name.clone(),
            injective,
            locality: c.claims.locality,
            globality: c.claims.globality,
            union_layers,
        },
    })
}

/// Guest reduced to the edges whose images lie in `sub_edges_host`, isolated
/// vertices dropped. None when nothing is left.
fn cut_to_edges(
    g: &Graph,
    map: &[usize],
    sub_edges_host: &BTreeSet<(usize, usize)>,
    inv: &[Option<usize>],
) -> Option<(Graph, Vec<usize>)> {
    let kept: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(u, v)| {
            let (a, b) = (map[u].min(map[v]), map[u].max(map[v]));
            sub_edges_host.contains(&(a, b))
        })
        .collect();
    if kept.is_empty() {
        return None;
    }
    let (ng, old) = g.edge_subgraph(&kept);
    let nmap = old.iter().map(|&o| inv[map[o]].unwrap()).collect();
    Some((ng, nmap))
}

/// Guest induced on the preimage of the host vertices `keep`, isolated
/// vertices dropped. None when nothing is left.
fn cut_to_vertices(
    g: &Graph,
    map: &[usize],
    keep: &BTreeSet<usize>,
    inv: &[Option<usize>],
) -> Option<(Graph, Vec<usize>)> {
    let verts: Vec<usize> = (0..g.n()).filter(|&u| keep.contains(&map[u])).collect();
    let (ind, old1) = g.induced(&verts);
    let (core, old2) = ind.without_isolated();
    if core.n() == 0 {
        return None;
    }
    let nmap = old2.iter().map(|&m| inv[map[old1[m]]].unwrap()).collect();
    Some((core, nmap))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// K7 with its edges partitioned into the seven triangles {i, i+1, i+3}.
    /// The class admits K2 so that induced restrictions stay inside it.
    fn fano_cover() -> (Cover, GuestClass) {
        let host = Graph::complete(7);
        let guests: Vec<(Graph, Vec<usize>)> = (0..7)
            .map(|i| (Graph::complete(3), vec![i, (i + 1) % 7, (i + 3) % 7]))
            .collect();
        let claims = Claims {
            class_name: "triangles+K2".into(),
            injective: true,
            locality: 3,
            globality: 7,
            union_layers: None,
        };
        let flags = crate::classes::ClassFlags {
            monotone: false,
            hereditary: false,
            component_closed: true,
            union_closed: false,
        };
        let class = GuestClass::finite(
            "triangles+K2",
            vec![Graph::complete(3), Graph::matching(1)],
            flags,
            None,
            None,
        )
        .unwrap();
        (Cover { host, guests, claims }, class)
    }

    #[test]
    fn fano_triangle_cover_verifies() {
        let (c, class) = fano_cover();
        let r = verify_cover(&c, &class);
        assert!(r.valid, "{:?}", r.diagnostics);
        assert!(r.injective);
        assert_eq!(r.achieved_locality, 3);
        assert_eq!(r.achieved_globality, 7);
        assert!(r.guest_membership.iter().all(|&m| m));
    }

    #[test]
    fn corrupted_certificates_get_pinpointed() {
        // Map entry redirected to a non-adjacent vertex.
        let host = Graph::cycle(4);
        let c = Cover {
            host: host.clone(),
            guests: vec![(Graph::matching(1), vec![0, 2])],
            claims: Claims {
                class_name: "k2-only".into(),
                injective: true,
                locality: 1,
                globality: 1,
                union_layers: None,
            },
        };
        let class = GuestClass::builtin("k2-only").unwrap();
        let r = verify_cover(&c, &class);
        assert!(!r.valid);
        assert!(r.diagnostics.iter().any(|d| d.contains("not preserved")), "{:?}", r.diagnostics);

        // A collapsed edge, an uncovered host edge, a locality breach, a
        // globality breach, and a non-member guest.
        let (mut c, class) = fano_cover();
        c.guests[0].1 = vec![0, 1, 0];
        let r = verify_cover(&c, &class);
        assert!(!r.valid);
        assert!(r.diagnostics.iter().any(|d| d.contains("collapses")));

        let (mut c, class) = fano_cover();
        c.guests.pop();
        let r = verify_cover(&c, &class);
        assert!(!r.valid);
        assert!(r.diagnostics.iter().any(|d| d.contains("not covered")));

        let (mut c, class) = fano_cover();
        c.claims.locality = 2;
        let r = verify_cover(&c, &class);
        assert!(!r.valid);
        assert_eq!(r.achieved_locality, 3);

        let (mut c, class) = fano_cover();
        c.claims.globality = 6;
        let r = verify_cover(&c, &class);
        assert!(!r.valid);

        let (mut c, class) = fano_cover();
        c.guests[0] = (Graph::path(3), vec![0, 1, 2]);
        let r = verify_cover(&c, &class);
        assert!(!r.valid);
        assert!(!r.guest_membership[0]);
        assert!(r.diagnostics.iter().any(|d| d.contains("not a member")));

        // Malformed map: wrong length and out of range.
        let (mut c, class) = fano_cover();
        c.guests[0].1 = vec![0, 1];
        assert!(!verify_cover(&c, &class).valid);
        let (mut c, class) = fano_cover();
        c.guests[0].1 = vec![0, 1, 9];
        assert!(!verify_cover(&c, &class).valid);
    }

    #[test]
    fn folded_covers_use_the_same_verifier() {
        // P3 folded onto a single edge: valid, not injective, locality 2.
        let c = Cover {
            host: Graph::path(2),
            guests: vec![(Graph::path(3), vec![0, 1, 0])],
            claims: Claims {
                class_name: "forests".into(),
                injective: false,
                locality: 2,
                globality: 1,
                union_layers: None,
            },
        };
        let class = GuestClass::builtin("forests").unwrap();
        let r = verify_cover(&c, &class);
        assert!(r.valid, "{:?}", r.diagnostics);
        assert!(!r.injective);
        assert_eq!(r.achieved_locality, 2);

        // Claiming injectivity over the same maps must fail.
        let mut c2 = c.clone();
        c2.claims.injective = true;
        assert!(!verify_cover(&c2, &class).valid);

        // A hairy cycle folded onto the star K_{1,7}: core C4 plus five
        // pendants at one core vertex; both ends of the core diagonal land
        // on the star center.
        let mut hairy = Graph::cycle(4);
        for _ in 0..5 {
            let leaf = hairy.add_vertex();
            hairy.add_edge(0, leaf).unwrap();
        }
        let c = Cover {
            host: Graph::star(7),
            guests: vec![(hairy, vec![0, 1, 0, 2, 3, 4, 5, 6, 7])],
            claims: Claims {
                class_name: "hairy-cycles+K2".into(),
                injective: false,
                locality: 2,
                globality: 1,
                union_layers: None,
            },
        };
        let class = GuestClass::builtin("hairy-cycles+K2").unwrap();
        let r = verify_cover(&c, &class);
        assert!(r.valid, "{:?}", r.diagnostics);
        assert!(!r.injective);
        assert_eq!(r.achieved_locality, 2);
        assert_eq!(r.achieved_globality, 1);
    }

    #[test]
    fn layered_cover_checks() {
        // Path 0-1-2-3 covered by three K2 guests in two layers.
        let base = Cover {
            host: Graph::path(4),
            guests: vec![
                (Graph::matching(1), vec![0, 1]),
                (Graph::matching(1), vec![2, 3]),
                (Graph::matching(1), vec![1, 2]),
            ],
            claims: Claims {
                class_name: "k2-only".into(),
                injective: true,
                locality: 2,
                globality: 2,
                union_layers: Some(vec![vec![0, 1], vec![2]]),
            },
        };
        let class = GuestClass::builtin("k2-only").unwrap();
        let r = verify_cover(&base, &class);
        assert!(r.valid, "{:?}", r.diagnostics);
        assert_eq!(r.achieved_globality, 2);

        // Overlapping images inside one layer.
        let mut c = base.clone();
        c.claims.union_layers = Some(vec![vec![0, 2], vec![1]]);
        let r = verify_cover(&c, &class);
        assert!(!r.valid);
        assert!(r.diagnostics.iter().any(|d| d.contains("both occupy")));

        // A guest missing from the layering.
        let mut c = base.clone();
        c.claims.union_layers = Some(vec![vec![0], vec![2]]);
        let r = verify_cover(&c, &class);
        assert!(!r.valid);
        assert!(r.diagnostics.iter().any(|d| d.contains("no layer")));

        // Layer count exceeding the globality claim.
        let mut c = base.clone();
        c.claims.union_layers = Some(vec![vec![0], vec![1], vec![2]]);
        let r = verify_cover(&c, &class);
        assert!(!r.valid);
        assert_eq!(r.achieved_globality, 3);
    }

    #[test]
    fn restrict_fano_to_induced_k6() {
        let (c, class) = fano_cover();
        let sub = Graph::complete(6);
        let emb: Vec<usize> = (0..6).collect();
        let out = restrict_cover(&c, &class, &sub, &emb, RestrictMode::Induced).unwrap();
        let r = verify_cover(&out, &class);
        assert!(r.valid, "{:?}", r.diagnostics);
        assert!(r.achieved_locality <= 3);
        assert_eq!(out.guests.len(), 7);
        // Triangles avoiding vertex 6 survive whole, the other three shrink
        // to single edges.
        let triangles = out.guests.iter().filter(|(g, _)| g.n() == 3).count();
        let edges = out.guests.iter().filter(|(g, _)| g.n() == 2).count();
        assert_eq!((triangles, edges), (4, 3));
    }

    #[test]
    fn restrict_to_host_is_identity() {
        let (c, class) = fano_cover();
        let emb: Vec<usize> = (0..7).collect();
        let out = restrict_cover(&c, &class, &c.host, &emb, RestrictMode::Induced).unwrap();
        assert_eq!(out, c);

        // Subgraph mode refuses the non-monotone triangle class.
        let err = restrict_cover(&c, &class, &c.host, &emb, RestrictMode::Subgraph);
        assert!(matches!(err, Err(RestrictError::NotMonotone(_))));
    }

    #[test]
    fn restrict_subgraph_mode_cuts_edges() {
        // C4 covered by two paths; restricting to one path keeps one guest.
        let c = Cover {
            host: Graph::cycle(4),
            guests: vec![
                (Graph::path(3), vec![0, 1, 2]),
                (Graph::path(3), vec![2, 3, 0]),
            ],
            claims: Claims {
                class_name: "forests".into(),
                injective: true,
                locality: 2,
                globality: 2,
                union_layers: None,
            },
        };
        let class = GuestClass::builtin("forests").unwrap();
        let sub = Graph::path(3);
        let out = restrict_cover(&c, &class, &sub, &[0, 1, 2], RestrictMode::Subgraph).unwrap();
        assert_eq!(out.guests.len(), 1);
        let r = verify_cover(&out, &class);
        assert!(r.valid, "{:?}", r.diagnostics);
        assert_eq!(r.achieved_globality, 1);
    }

    #[test]
    fn restrict_layered_cover_reindexes_layers() {
        let c = Cover {
            host: Graph::path(4),
            guests: vec![
                (Graph::matching(1), vec![0, 1]),
                (Graph::matching(1), vec![2, 3]),
                (Graph::matching(1), vec![1, 2]),
            ],
            claims: Claims {
                class_name: "forests".into(),
                injective: true,
                locality: 2,
                globality: 2,
                union_layers: Some(vec![vec![0, 1], vec![2]]),
            },
        };
        let class = GuestClass::builtin("forests").unwrap();
        let sub = Graph::path(3);
        let out = restrict_cover(&c, &class, &sub, &[0, 1, 2], RestrictMode::Subgraph).unwrap();
        // Guest 1 lived on the dropped edge (2, 3).
        assert_eq!(out.guests.len(), 2);
        assert_eq!(out.claims.union_layers, Some(vec![vec![0], vec![1]]));
        let r = verify_cover(&out, &class);
        assert!(r.valid, "{:?}", r.diagnostics);
        assert_eq!(r.achieved_globality, 2);
    }

    /// A 10-vertex spider: star centers 0, 4, 7 chained by the edges
    /// (0, 4) and (4, 7), with leaves {1, 2, 3}, {5, 6}, {8, 9}.
    fn spider_cover() -> (Cover, GuestClass) {
        let mut host = Graph::new(10);
        for leaf in [1, 2, 3, 4] {
            host.add_edge(0, leaf).unwrap();
        }
        for leaf in [5, 6, 7] {
            host.add_edge(4, leaf).unwrap();
        }
        for leaf in [8, 9] {
            host.add_edge(7, leaf).unwrap();
        }
        let guests = vec![
            (Graph::star(4), vec![0, 1, 2, 3, 4]),
            (Graph::star(3), vec![4, 5, 6, 7]),
            (Graph::star(2), vec![7, 8, 9]),
        ];
        let claims = Claims {
            class_name: "stars".into(),
            injective: true,
            locality: 2,
            globality: 3,
            union_layers: None,
        };
        (Cover { host, guests, claims }, GuestClass::builtin("stars").unwrap())
    }

    #[test]
    fn restrict_stars_to_weak_induced_star_forest() {
        let (c, class) = spider_cover();
        assert!(verify_cover(&c, &class).valid);

        // Two induced stars with a host edge (0, 4) running between them:
        // weak induced but not induced.
        let mut sub = Graph::new(7);
        for leaf in [1, 2, 3] {
            sub.add_edge(0, leaf).unwrap();
        }
        sub.add_edge(4, 5).unwrap();
        sub.add_edge(4, 6).unwrap();
        let emb: Vec<usize> = (0..7).collect();

        assert!(matches!(
            restrict_cover(&c, &class, &sub, &emb, RestrictMode::Induced),
            Err(RestrictError::NotInduced(0, 4))
        ));
        assert!(matches!(
            restrict_cover(&c, &class, &sub, &emb, RestrictMode::WeakInduced { target: Variant::Global }),
            Err(RestrictError::GlobalTarget)
        ));

        let out = restrict_cover(
            &c,
            &class,
            &sub,
            &emb,
            RestrictMode::WeakInduced { target: Variant::Union },
        )
        .unwrap();
        // The third star lives entirely outside the subgraph.
        assert_eq!(out.guests.len(), 2);
        let r = verify_cover_union_closure(&out, &class);
        assert!(r.valid, "{:?}", r.diagnostics);
        assert!(r.achieved_locality <= 2);
        assert!(r.achieved_globality <= 3);
    }

    #[test]
    fn weak_induced_pieces_reunite_into_one_guest() {
        // A single path guest crossing both components of the subgraph must
        // come back as one two-component guest, not two guests.
        let host = Graph::path(5);
        let c = Cover {
            host: host.clone(),
            guests: vec![(Graph::path(5), vec![0, 1, 2, 3, 4])],
            claims: Claims {
                class_name: "forests".into(),
                injective: true,
                locality: 1,
                globality: 1,
                union_layers: None,
            },
        };
        let class = GuestClass::builtin("forests").unwrap();
        // Components {0, 1} and {3, 4}, both induced; host edges (1, 2) and
        // (2, 3) leave the subgraph.
        let mut sub = Graph::new(4);
        sub.add_edge(0, 1).unwrap();
        sub.add_edge(2, 3).unwrap();
        let out = restrict_cover(
            &c,
            &class,
            &sub,
            &[0, 1, 3, 4],
            RestrictMode::WeakInduced { target: Variant::Local },
        )
        .unwrap();
        assert_eq!(out.guests.len(), 1);
        assert_eq!(out.guests[0].0.n(), 4);
        assert_eq!(out.guests[0].0.components().len(), 2);
        let r = verify_cover_union_closure(&out, &class);
        assert!(r.valid, "{:?}", r.diagnostics);
        assert_eq!(r.achieved_globality, 1);
    }

    #[test]
    fn random_restrictions_stay_valid() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let forests = GuestClass::builtin("forests").unwrap();
        for round in 0..40 {
            let n = rng.gen_range(4..=9);
            let mut host = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.45) {
                        host.add_edge(u, v).unwrap();
                    }
                }
            }
            // Every edge as its own K2 guest: injective, locality = max load.
            let guests: Vec<(Graph, Vec<usize>)> =
                host.edges().map(|(u, v)| (Graph::matching(1), vec![u, v])).collect();
            if guests.is_empty() {
                continue;
            }
            let c = Cover {
                host: host.clone(),
                guests,
                claims: Claims {
                    class_name: "forests".into(),
                    injective: true,
                    locality: host.max_degree(),
                    globality: host.m(),
                    union_layers: None,
                },
            };
            let orig = verify_cover(&c, &forests);
            assert!(orig.valid, "{:?}", orig.diagnostics);

            // Induced restriction onto a random vertex subset.
            let verts: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.6)).collect();
            let (sub, emb) = host.induced(&verts);
            let out = restrict_cover(&c, &forests, &sub, &emb, RestrictMode::Induced).unwrap();
            let r = verify_cover(&out, &forests);
            assert!(r.valid, "round {round}: {:?}", r.diagnostics);
            assert!(r.achieved_locality <= orig.achieved_locality);
            assert!(r.achieved_globality <= orig.achieved_globality);

            // Weak induced restriction onto two disjoint induced subsets;
            // host edges may run between them.
            let mut a: Vec<usize> = Vec::new();
            let mut b: Vec<usize> = Vec::new();
            for v in 0..n {
                match rng.gen_range(0..3) {
                    0 => a.push(v),
                    1 => b.push(v),
                    _ => {}
                }
            }
            let (ga, ea) = host.induced(&a);
            let (gb, eb) = host.induced(&b);
            let (sub, off) = disjoint_union(&[ga.clone(), gb.clone()]);
            let mut emb = vec![0usize; sub.n()];
            for (k, &hv) in ea.iter().enumerate() {
                emb[off[0] + k] = hv;
            }
            for (k, &hv) in eb.iter().enumerate() {
                emb[off[1] + k] = hv;
            }
            let out = restrict_cover(
                &c,
                &forests,
                &sub,
                &emb,
                RestrictMode::WeakInduced { target: Variant::Folded },
            )
            .unwrap();
            let r = verify_cover_union_closure(&out, &forests);
            assert!(r.valid, "round {round}: {:?}", r.diagnostics);
            assert!(r.achieved_locality <= orig.achieved_locality);

            // Subgraph restriction onto a random edge subset.
            let kept: Vec<(usize, usize)> =
                host.edges().filter(|_| rng.gen_bool(0.5)).collect();
            if kept.is_empty() {
                continue;
            }
            let (sub, emb) = host.edge_subgraph(&kept);
            let out = restrict_cover(&c, &forests, &sub, &emb, RestrictMode::Subgraph).unwrap();
            let r = verify_cover(&out, &forests);
            assert!(r.valid, "round {round}: {:?}", r.diagnostics);
            assert!(r.achieved_globality <= orig.achieved_globality);
        }
    }
}
