//! Guest class registry: named classes and finite lists, with structural
//! flags, degree/density/chromatic facts, and the solver dispatch strategy.

use crate::graph::Graph;
use crate::iso::is_isomorphic;
use crate::params::predicates::{
    is_bipartite, is_c4_free, is_complete, is_complete_bipartite, is_forest, is_hairy_cycle,
    is_linear_forest, is_star, is_star_forest,
};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassFlags {
    /// Closed under subgraphs.
    pub monotone: bool,
    /// Closed under induced subgraphs.
    pub hereditary: bool,
    /// Closed under taking connected components.
    pub component_closed: bool,
    /// Closed under disjoint unions.
    pub union_closed: bool,
}

impl ClassFlags {
    const fn new(monotone: bool, hereditary: bool, component_closed: bool, union_closed: bool) -> Self {
        ClassFlags { monotone, hereditary, component_closed, union_closed }
    }

    /// monotone implies hereditary implies component-closed.
    pub fn coherent(&self) -> bool {
        (!self.monotone || self.hereditary) && (!self.hereditary || self.component_closed)
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum ClassError {
    #[error("unknown class name {0:?}")]
    UnknownName(String),
    #[error("flag set violates monotone => hereditary => component-closed")]
    IncoherentFlags,
    #[error("finite list has no members")]
    EmptyList,
    #[error("declared {bound} bound {declared} fails on member {member}")]
    BoundViolated { bound: &'static str, declared: String, member: usize },
    #[error("declared flag {0} fails on member {1}")]
    FlagViolated(&'static str, usize),
    #[error("registered class must contain K2")]
    MissingK2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedKind {
    Stars,
    StarForests,
    Forests,
    LinearForests,
    Bipartite,
    CompleteBipartite,
    HairyCycles,
    ForbC4,
    CompleteGraphs,
}

#[derive(Debug, Clone)]
pub enum ClassKind {
    FiniteList(Vec<Graph>),
    Named(NamedKind),
}

/// How the solvers search this class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Every nonempty edge subset of a member is again a member (after
    /// dropping isolated vertices), so covers normalize to edge partitions.
    EdgeMonotone,
    /// Injective variants enumerate candidate guest images in the host.
    Candidates(CandidateKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateKind {
    List,
    Bicliques,
    Cliques,
    HairyCycles,
}

#[derive(Debug, Clone)]
pub struct GuestClass {
    name: String,
    kind: ClassKind,
    flags: ClassFlags,
    mad_bound: Option<Rational>,
    chi_bound: Option<u32>,
    /// Why the stored bounds hold (named classes carry trusted constants).
    bound_note: Option<String>,
    max_member_degree: Option<usize>,
    edge_monotone: bool,
}

impl GuestClass {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &ClassKind {
        &self.kind
    }

    pub fn flags(&self) -> ClassFlags {
        self.flags
    }

    pub fn mad_bound(&self) -> Option<Rational> {
        self.mad_bound
    }

    pub fn chi_bound(&self) -> Option<u32> {
        self.chi_bound
    }

    pub fn bound_note(&self) -> Option<&str> {
        self.bound_note.as_deref()
    }

    /// Largest degree any member can have; None when unbounded.
    pub fn max_member_degree(&self) -> Option<usize> {
        self.max_member_degree
    }

    /// Most edges any single member can have on at most `n` vertices
    /// (ignoring isolated vertices). Drives counting floors in the solvers;
    /// `None` means no member with an edge fits in `n` vertices.
    pub fn max_member_edges(&self, n: usize) -> Option<usize> {
        if n < 2 {
            return None;
        }
        match &self.kind {
            ClassKind::FiniteList(ms) => ms
                .iter()
                .filter_map(|g| {
                    let (c, _) = g.without_isolated();
                    if c.n() <= n && c.m() > 0 { Some(c.m()) } else { None }
                })
                .max(),
            ClassKind::Named(k) => match k {
                NamedKind::Stars
                | NamedKind::StarForests
                | NamedKind::Forests
                | NamedKind::LinearForests => Some(n - 1),
                NamedKind::Bipartite | NamedKind::CompleteBipartite => Some(n * n / 4),
                NamedKind::HairyCycles => Some(n),
                NamedKind::CompleteGraphs => Some(n * (n - 1) / 2),
                NamedKind::ForbC4 => Some(c4_free_edge_cap(n)),
            },
        }
    }

    pub fn members(&self) -> Option<&[Graph]> {
        match &self.kind {
            ClassKind::FiniteList(ms) => Some(ms),
            ClassKind::Named(_) => None,
        }
    }

    pub fn strategy(&self) -> Strategy {
        if self.edge_monotone {
            return Strategy::EdgeMonotone;
        }
        match &self.kind {
            ClassKind::FiniteList(_) => Strategy::Candidates(CandidateKind::List),
            ClassKind::Named(NamedKind::CompleteBipartite) => {
                Strategy::Candidates(CandidateKind::Bicliques)
            }
            ClassKind::Named(NamedKind::CompleteGraphs) => {
                Strategy::Candidates(CandidateKind::Cliques)
            }
            ClassKind::Named(NamedKind::HairyCycles) => {
                Strategy::Candidates(CandidateKind::HairyCycles)
            }
            ClassKind::Named(_) => unreachable!("named edge-monotone kinds short-circuit"),
        }
    }

    pub fn is_member(&self, g: &Graph) -> bool {
        match &self.kind {
            ClassKind::FiniteList(ms) => ms.iter().any(|m| is_isomorphic(m, g)),
            ClassKind::Named(k) => match k {
                NamedKind::Stars => is_star(g),
                NamedKind::StarForests => is_star_forest(g),
                NamedKind::Forests => is_forest(g),
                NamedKind::LinearForests => is_linear_forest(g),
                NamedKind::Bipartite => is_bipartite(g),
                NamedKind::CompleteBipartite => is_complete_bipartite(g),
                NamedKind::HairyCycles => g == &Graph::matching(1) || is_hairy_cycle(g),
                NamedKind::ForbC4 => is_c4_free(g),
                NamedKind::CompleteGraphs => is_complete(g),
            },
        }
    }

    /// Membership in the class of disjoint unions of members: the components
    /// of g must partition into groups, each group isomorphic to a member.
    /// Named classes are all component-closed, so the grouping collapses to
    /// per-component membership there.
    pub fn union_closure_member(&self, g: &Graph) -> bool {
        match &self.kind {
            ClassKind::Named(_) => {
                let comps = g.components();
                comps.iter().all(|c| self.is_member(&g.induced(c).0))
            }
            ClassKind::FiniteList(ms) => union_closure_by_grouping(ms, g),
        }
    }

    /// A finite list intended for registration must honor the standing
    /// assumption that K2 is a member.
    pub fn contains_k2(&self) -> bool {
        self.is_member(&Graph::matching(1))
    }

    /// Heredity weakened to ignore isolated vertices: every induced subgraph
    /// of every member is, once isolated vertices are dropped, empty or a
    /// disjoint union of members. Strict heredity implies this. Restricting
    /// a cover to induced pieces needs exactly this much, because restricted
    /// guests shed their isolated vertices anyway.
    pub fn hereditary_mod_isolated(&self) -> bool {
        if self.flags.hereditary {
            return true;
        }
        match &self.kind {
            // Induced subgraphs of stars are smaller stars plus loose leaves.
            ClassKind::Named(NamedKind::Stars | NamedKind::StarForests) => true,
            // Remaining non-hereditary named kind is hairy cycles: deleting a
            // core vertex leaves a caterpillar, which is not one.
            ClassKind::Named(_) => false,
            ClassKind::FiniteList(ms) => ms.iter().all(|m| {
                if m.n() > 10 {
                    return false; // too large to check exhaustively; stay safe
                }
                (1u32..1 << m.n()).all(|mask| {
                    let verts: Vec<usize> =
                        (0..m.n()).filter(|&v| mask >> v & 1 == 1).collect();
                    let (core, _) = m.induced(&verts).0.without_isolated();
                    self.union_closure_member(&core)
                })
            }),
        }
    }

    /// Ad-hoc finite list: flags and bounds are checked against every member
    /// (closure flags exhaustively while members stay small). K2 presence is
    /// NOT required here; `registered_finite` adds that gate.
    pub fn finite(
        name: impl Into<String>,
        members: Vec<Graph>,
        flags: ClassFlags,
        mad_bound: Option<Rational>,
        chi_bound: Option<u32>,
    ) -> Result<GuestClass, ClassError> {
        if members.is_empty() {
            return Err(ClassError::EmptyList);
        }
        if !flags.coherent() {
            return Err(ClassError::IncoherentFlags);
        }
        validate_list_flags(&members, flags)?;
        if let Some(d) = mad_bound {
            for (i, m) in members.iter().enumerate() {
                if crate::params::mad::mad(m).0 > d {
                    return Err(ClassError::BoundViolated {
                        bound: "mad",
                        declared: d.to_string(),
                        member: i,
                    });
                }
            }
        }
        if let Some(c) = chi_bound {
            for (i, m) in members.iter().enumerate() {
                let chi = crate::params::chromatic::chromatic_number(m, 10_000_000);
                if chi.lower() > c {
                    return Err(ClassError::BoundViolated {
                        bound: "chi",
                        declared: c.to_string(),
                        member: i,
                    });
                }
            }
        }
        let max_deg = members.iter().map(|m| m.max_degree()).max();
        let em = list_edge_monotone(&members);
        Ok(GuestClass {
            name: name.into(),
            kind: ClassKind::FiniteList(members),
            flags,
            mad_bound,
            chi_bound,
            bound_note: Some("validated against every member at construction".into()),
            max_member_degree: max_deg,
            edge_monotone: em,
        })
    }

    /// Finite list for the registry: additionally enforces K2 membership.
    pub fn registered_finite(
        name: impl Into<String>,
        members: Vec<Graph>,
        flags: ClassFlags,
        mad_bound: Option<Rational>,
        chi_bound: Option<u32>,
    ) -> Result<GuestClass, ClassError> {
        let c = Self::finite(name, members, flags, mad_bound, chi_bound)?;
        if !c.contains_k2() {
            return Err(ClassError::MissingK2);
        }
        Ok(c)
    }

    pub fn builtin_names() -> &'static [&'static str] {
        &[
            "k2-only",
            "triangles",
            "stars",
            "star-forests",
            "forests",
            "linear-forests",
            "bipartite",
            "complete-bipartite",
            "hairy-cycles+K2",
            "forb-c4",
            "complete-graphs",
        ]
    }

    pub fn builtin(name: &str) -> Result<GuestClass, ClassError> {
        let named = |kind,
                     flags: ClassFlags,
                     mad_bound: Option<Rational>,
                     chi_bound: Option<u32>,
                     note: &str,
                     max_deg: Option<usize>,
                     em: bool| {
            debug_assert!(flags.coherent());
            GuestClass {
                name: name.to_string(),
                kind: ClassKind::Named(kind),
                flags,
                mad_bound,
                chi_bound,
                bound_note: Some(note.to_string()),
                max_member_degree: max_deg,
                edge_monotone: em,
            }
        };
        let two = Rational::from_int(2);
        Ok(match name {
            "k2-only" => GuestClass::registered_finite(
                name,
                vec![Graph::matching(1)],
                ClassFlags::new(false, false, true, false),
                Some(Rational::from_int(1)),
                Some(2),
            )
            .expect("k2-only builtin"),
            // The one registry entry without K2, on purpose: the K7 landmark
            // values (7 global, 5 union, 3 local) hold for pure triangles.
            // Admitting K2 lets layers mix a triangle with a matching and the
            // union number drops to 4.
            "triangles" => GuestClass::finite(
                name,
                vec![Graph::complete(3)],
                ClassFlags::new(false, false, true, false),
                Some(two),
                Some(3),
            )
            .expect("triangles builtin"),
            "stars" => named(
                NamedKind::Stars,
                ClassFlags::new(false, false, true, false),
                Some(two),
                Some(2),
                "a star K_{1,n} has average degree 2n/(n+1) < 2 and is bipartite",
                None,
                true,
            ),
            "star-forests" => named(
                NamedKind::StarForests,
                ClassFlags::new(false, false, true, true),
                Some(two),
                Some(2),
                "disjoint unions of stars stay below average degree 2 and bipartite",
                None,
                true,
            ),
            "forests" => named(
                NamedKind::Forests,
                ClassFlags::new(true, true, true, true),
                Some(two),
                Some(2),
                "every subforest has fewer edges than vertices; trees are bipartite",
                None,
                true,
            ),
            "linear-forests" => named(
                NamedKind::LinearForests,
                ClassFlags::new(true, true, true, true),
                Some(two),
                Some(2),
                "paths have maximum degree 2 and are bipartite",
                Some(2),
                true,
            ),
            "bipartite" => named(
                NamedKind::Bipartite,
                ClassFlags::new(true, true, true, true),
                None,
                Some(2),
                "two-colorability is the defining property; density is unbounded",
                None,
                true,
            ),
            "complete-bipartite" => named(
                NamedKind::CompleteBipartite,
                ClassFlags::new(false, true, true, false),
                None,
                Some(2),
                "members are bipartite; K_{n,n} makes density unbounded",
                None,
                false,
            ),
            "hairy-cycles+K2" => named(
                NamedKind::HairyCycles,
                ClassFlags::new(false, false, true, false),
                Some(two),
                Some(3),
                "a hairy cycle is unicyclic, so every subgraph has at most as many edges as vertices; an odd core cycle needs 3 colors",
                None,
                false,
            ),
            "forb-c4" => named(
                NamedKind::ForbC4,
                ClassFlags::new(true, true, true, true),
                None,
                None,
                "deleting edges cannot create a C4; density and chromatic number are unbounded in the class",
                None,
                true,
            ),
            "complete-graphs" => named(
                NamedKind::CompleteGraphs,
                ClassFlags::new(false, true, true, false),
                None,
                None,
                "induced subgraphs of cliques are cliques; clique size is unbounded",
                None,
                false,
            ),
            other => return Err(ClassError::UnknownName(other.to_string())),
        })
    }
}

/// Does every nonempty edge subset of every member stay in the list (after
/// dropping isolated vertices)? Members past 12 edges are conservatively
/// treated as breaking the property, which only costs solver speed.
fn list_edge_monotone(members: &[Graph]) -> bool {
    for m in members {
        if m.m() > 12 {
            return false;
        }
        let edges: Vec<(usize, usize)> = m.edges().collect();
        for mask in 1u32..(1 << edges.len()) {
            let keep: Vec<(usize, usize)> = edges
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let (sub, _) = m.edge_subgraph(&keep);
            if !members.iter().any(|cand| is_isomorphic(cand, &sub)) {
                return false;
            }
        }
    }
    true
}

fn validate_list_flags(members: &[Graph], flags: ClassFlags) -> Result<(), ClassError> {
    let in_list = |g: &Graph| members.iter().any(|m| is_isomorphic(m, g));
    for (i, m) in members.iter().enumerate() {
        if flags.component_closed {
            for comp in m.components() {
                if !in_list(&m.induced(&comp).0) {
                    return Err(ClassError::FlagViolated("component_closed", i));
                }
            }
        }
        if flags.hereditary && m.n() <= 10 {
            for mask in 1u32..(1 << m.n()) {
                let verts: Vec<usize> = (0..m.n()).filter(|&v| mask >> v & 1 == 1).collect();
                if !in_list(&m.induced(&verts).0) {
                    return Err(ClassError::FlagViolated("hereditary", i));
                }
            }
        }
        if flags.monotone && m.n() <= 8 {
            // Subgraph closure: every vertex subset combined with every edge
            // subset of the induced part.
            for mask in 1u32..(1 << m.n()) {
                let verts: Vec<usize> = (0..m.n()).filter(|&v| mask >> v & 1 == 1).collect();
                let (ind, _) = m.induced(&verts);
                let edges: Vec<(usize, usize)> = ind.edges().collect();
                if edges.len() > 12 {
                    continue;
                }
                for emask in 0u32..(1 << edges.len()) {
                    let mut sub = Graph::new(ind.n());
                    for (j, &(u, v)) in edges.iter().enumerate() {
                        if emask >> j & 1 == 1 {
                            sub.add_edge(u, v).unwrap();
                        }
                    }
                    if !in_list(&sub) {
                        return Err(ClassError::FlagViolated("monotone", i));
                    }
                }
            }
        }
    }
    if flags.union_closed {
        for (i, a) in members.iter().enumerate() {
            for b in members.iter() {
                let (u, _) = crate::graph::disjoint_union(&[a.clone(), b.clone()]);
                if !in_list(&u) {
                    return Err(ClassError::FlagViolated("union_closed", i));
                }
            }
        }
    }
    Ok(())
}

/// Components of g, grouped so each group is isomorphic to a member.
/// Components are bucketed into isomorphism classes shared with the members'
/// own components, reducing the search to vectors of counts.
fn union_closure_by_grouping(members: &[Graph], g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let g_comps: Vec<Graph> = g.components().iter().map(|c| g.induced(c).0).collect();
    let mut reps: Vec<Graph> = Vec::new();
    let class_of = |h: &Graph, reps: &mut Vec<Graph>| -> usize {
        for (i, r) in reps.iter().enumerate() {
            if is_isomorphic(r, h) {
                return i;
            }
        }
        reps.push(h.clone());
        reps.len() - 1
    };
    let mut target: Vec<usize> = Vec::new();
    for c in &g_comps {
        let idx = class_of(c, &mut reps);
        if idx >= target.len() {
            target.resize(idx + 1, 0);
        }
        target[idx] += 1;
    }
    let mut member_vecs: Vec<Vec<usize>> = Vec::new();
    'member: for m in members {
        let mut vec = vec![0usize; target.len()];
        for c in m.components() {
            let comp = m.induced(&c).0;
            // A member component matching nothing in g makes the member
            // unusable for this g.
            let mut found = usize::MAX;
            for (i, r) in reps.iter().enumerate().take(target.len()) {
                if is_isomorphic(r, &comp) {
                    found = i;
                    break;
                }
            }
            if found == usize::MAX {
                continue 'member;
            }
            vec[found] += 1;
        }
        if vec.iter().any(|&x| x > 0) {
            member_vecs.push(vec);
        }
    }
    fn solve(target: &mut Vec<usize>, vecs: &[Vec<usize>]) -> bool {
        let first = match target.iter().position(|&x| x > 0) {
            None => return true,
            Some(i) => i,
        };
        for v in vecs {
            if v[first] == 0 || v.iter().zip(target.iter()).any(|(a, b)| a > b) {
                continue;
            }
            for (t, a) in target.iter_mut().zip(v.iter()) {
                *t -= a;
            }
            if solve(target, vecs) {
                return true;
            }
            for (t, a) in target.iter_mut().zip(v.iter()) {
                *t += a;
            }
        }
        false
    }
    solve(&mut target, &member_vecs)
}

/// Largest m with m <= n(1 + sqrt(4n - 3))/4, the classical edge bound for
/// graphs with no four-cycle. Checked in integers: for 4m > n the condition
/// is (4m - n)^2 <= n^2 (4n - 3).
fn c4_free_edge_cap(n: usize) -> usize {
    let nn = n as u128;
    let rhs = nn * nn * (4 * nn - 3);
    let mut m = n * n / 2;
    while m > 0 {
        let lhs = 4 * m as u128;
        if lhs <= nn || (lhs - nn) * (lhs - nn) <= rhs {
            break;
        }
        m -= 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::disjoint_union;

    #[test]
    fn builtin_flags_and_k2() {
        for name in GuestClass::builtin_names() {
            let c = GuestClass::builtin(name).unwrap();
            assert!(c.flags().coherent(), "{name}");
            // Triangles is the deliberate exception to the K2 convention.
            assert_eq!(c.contains_k2(), *name != "triangles", "{name}");
        }
        let b = GuestClass::builtin("bipartite").unwrap();
        assert!(b.flags().monotone);
        assert_eq!(b.chi_bound(), Some(2));
        let lf = GuestClass::builtin("linear-forests").unwrap();
        assert!(lf.flags().monotone);
        assert_eq!(lf.mad_bound(), Some(Rational::from_int(2)));
        let hc = GuestClass::builtin("hairy-cycles+K2").unwrap();
        assert!(hc.flags().component_closed);
        assert!(!hc.flags().hereditary);
        let st = GuestClass::builtin("stars").unwrap();
        assert!(st.flags().component_closed);
        assert!(!st.flags().monotone);
        assert!(GuestClass::builtin("no-such").is_err());
    }

    #[test]
    fn membership_spot_checks() {
        let stars = GuestClass::builtin("stars").unwrap();
        assert!(stars.is_member(&Graph::star(7)));
        assert!(!stars.is_member(&Graph::path(4)));
        let forb = GuestClass::builtin("forb-c4").unwrap();
        assert!(!forb.is_member(&Graph::complete(7)));
        assert!(forb.is_member(&Graph::complete(3)));
        let tri = GuestClass::builtin("triangles").unwrap();
        assert!(tri.is_member(&Graph::complete(3)));
        assert!(!tri.is_member(&Graph::matching(1)));
        assert!(!tri.is_member(&Graph::path(3)));
        let hairy = GuestClass::builtin("hairy-cycles+K2").unwrap();
        let mut hc = Graph::cycle(4);
        let leaf = hc.add_vertex();
        hc.add_edge(0, leaf).unwrap();
        assert!(hairy.is_member(&hc));
        assert!(hairy.is_member(&Graph::cycle(3)));
        assert!(!hairy.is_member(&Graph::star(3)));
        let cb = GuestClass::builtin("complete-bipartite").unwrap();
        assert!(cb.is_member(&Graph::cycle(4)));
        assert!(!cb.is_member(&Graph::path(4)));
        let k = GuestClass::builtin("complete-graphs").unwrap();
        assert!(k.is_member(&Graph::complete(6)));
        assert!(!k.is_member(&Graph::cycle(4)));
    }

    #[test]
    fn union_closure_grouping() {
        let stars = GuestClass::builtin("stars").unwrap();
        let (sf, _) = disjoint_union(&[Graph::star(2), Graph::star(1), Graph::star(4)]);
        assert!(stars.union_closure_member(&sf));
        assert!(!stars.union_closure_member(&Graph::path(4)));

        let k3_only = GuestClass::finite(
            "k3-only",
            vec![Graph::complete(3)],
            ClassFlags::new(false, false, true, false),
            Some(Rational::from_int(2)),
            Some(3),
        )
        .unwrap();
        let (two_k3, _) = disjoint_union(&[Graph::complete(3), Graph::complete(3)]);
        assert!(k3_only.union_closure_member(&two_k3));
        let (k3_k2, _) = disjoint_union(&[Graph::complete(3), Graph::matching(1)]);
        assert!(!k3_only.union_closure_member(&k3_k2));

        // A disconnected member must be groupable across components.
        let pair = disjoint_union(&[Graph::path(3), Graph::path(3)]).0;
        let cls = GuestClass::finite(
            "two-p3",
            vec![pair.clone(), Graph::matching(1)],
            ClassFlags::new(false, false, false, false),
            Some(Rational::from_int(2)),
            Some(2),
        )
        .unwrap();
        assert!(cls.union_closure_member(&pair));
        let one = Graph::path(3);
        assert!(!cls.union_closure_member(&one), "single P3 cannot form the pair member");
        let (three, _) = disjoint_union(&[Graph::path(3), Graph::path(3), Graph::path(3)]);
        assert!(!cls.union_closure_member(&three));
        let (four, _) =
            disjoint_union(&[Graph::path(3), Graph::path(3), Graph::path(3), Graph::path(3)]);
        assert!(cls.union_closure_member(&four));
    }

    #[test]
    fn union_closed_classes_collapse_to_membership() {
        let forests = GuestClass::builtin("forests").unwrap();
        let (f, _) = disjoint_union(&[Graph::path(4), Graph::star(3)]);
        assert_eq!(forests.is_member(&f), forests.union_closure_member(&f));
        assert!(forests.is_member(&f));
        let (with_cycle, _) = disjoint_union(&[Graph::path(4), Graph::cycle(3)]);
        assert_eq!(
            forests.is_member(&with_cycle),
            forests.union_closure_member(&with_cycle)
        );
        assert!(!forests.is_member(&with_cycle));
    }

    #[test]
    fn strategies() {
        assert_eq!(
            GuestClass::builtin("forests").unwrap().strategy(),
            Strategy::EdgeMonotone
        );
        assert_eq!(
            GuestClass::builtin("stars").unwrap().strategy(),
            Strategy::EdgeMonotone
        );
        assert_eq!(
            GuestClass::builtin("k2-only").unwrap().strategy(),
            Strategy::EdgeMonotone,
            "every edge subset of K2 is K2"
        );
        assert_eq!(
            GuestClass::builtin("triangles").unwrap().strategy(),
            Strategy::Candidates(CandidateKind::List),
            "P3 is an edge subset of K3 but no member"
        );
        assert_eq!(
            GuestClass::builtin("complete-bipartite").unwrap().strategy(),
            Strategy::Candidates(CandidateKind::Bicliques)
        );
        assert_eq!(
            GuestClass::builtin("complete-graphs").unwrap().strategy(),
            Strategy::Candidates(CandidateKind::Cliques)
        );
        assert_eq!(
            GuestClass::builtin("hairy-cycles+K2").unwrap().strategy(),
            Strategy::Candidates(CandidateKind::HairyCycles)
        );
    }

    #[test]
    fn finite_list_validation_rejects_bad_claims() {
        // Declared hereditary but K1 is no member.
        let err = GuestClass::finite(
            "bad",
            vec![Graph::complete(3), Graph::matching(1)],
            ClassFlags::new(false, true, true, false),
            None,
            None,
        );
        assert!(matches!(err, Err(ClassError::FlagViolated("hereditary", _))));

        // Declared mad bound too small for K3.
        let err = GuestClass::finite(
            "bad-mad",
            vec![Graph::complete(3)],
            ClassFlags::new(false, false, true, false),
            Some(Rational::new(3, 2)),
            None,
        );
        assert!(matches!(err, Err(ClassError::BoundViolated { bound: "mad", .. })));

        // K2 gate only applies to registry-bound lists.
        assert!(GuestClass::finite(
            "k3-adhoc",
            vec![Graph::complete(3)],
            ClassFlags::new(false, false, true, false),
            None,
            None,
        )
        .is_ok());
        assert!(matches!(
            GuestClass::registered_finite(
                "k3-registered",
                vec![Graph::complete(3)],
                ClassFlags::new(false, false, true, false),
                None,
                None,
            ),
            Err(ClassError::MissingK2)
        ));

        // Incoherent flags: monotone without hereditary.
        let err = GuestClass::finite(
            "incoherent",
            vec![Graph::matching(1)],
            ClassFlags { monotone: true, hereditary: false, component_closed: true, union_closed: false },
            None,
            None,
        );
        assert!(matches!(err, Err(ClassError::IncoherentFlags)));
    }

    #[test]
    fn hereditary_closure_holds_on_random_members() {
        // Registered hereditary classes really are closed under induced
        // subgraphs at small scale.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let classes: Vec<GuestClass> = ["forests", "bipartite", "forb-c4", "complete-graphs", "complete-bipartite"]
            .iter()
            .map(|n| GuestClass::builtin(n).unwrap())
            .collect();
        for _ in 0..60 {
            let n = rng.gen_range(1..=7);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v).unwrap();
                    }
                }
            }
            for c in &classes {
                if !c.is_member(&g) {
                    continue;
                }
                for mask in 1u32..(1 << n) {
                    let verts: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                    assert!(
                        c.is_member(&g.induced(&verts).0),
                        "{} not hereditary at {g:?} verts {verts:?}",
                        c.name()
                    );
                }
            }
        }
    }

    #[test]
    fn heredity_mod_isolated_vertices() {
        for (name, expect) in [
            ("stars", true),
            ("star-forests", true),
            ("triangles", false),
            ("k2-only", true),
            ("forests", true),
            ("hairy-cycles+K2", false),
        ] {
            let c = GuestClass::builtin(name).unwrap();
            assert_eq!(c.hereditary_mod_isolated(), expect, "{name}");
        }

        // P3 loses only leaves under induced subgraphs, P4 can drop to a K2
        // that the first list lacks and to a P3 that the second lacks.
        let flags = ClassFlags::new(false, false, true, false);
        let p3k2 = GuestClass::finite(
            "p3+k2",
            vec![Graph::path(3), Graph::matching(1)],
            flags,
            None,
            None,
        )
        .unwrap();
        assert!(p3k2.hereditary_mod_isolated());
        let p4 = GuestClass::finite("p4", vec![Graph::path(4)], flags, None, None).unwrap();
        assert!(!p4.hereditary_mod_isolated());
        let p4k2 = GuestClass::finite(
            "p4+k2",
            vec![Graph::path(4), Graph::matching(1)],
            flags,
            None,
            None,
        )
        .unwrap();
        assert!(!p4k2.hereditary_mod_isolated());
    }
}
