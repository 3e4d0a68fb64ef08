//! Planarity testing: edge-count cutoff, split into biconnected components,
//! then Demoucron's face-extension algorithm on each.

use crate::graph::Graph;
use std::collections::BTreeSet;

pub fn is_planar(g: &Graph) -> bool {
    if g.n() >= 3 && g.m() > 3 * g.n() - 6 {
        return false;
    }
    biconnected_components(g).iter().all(|comp| demoucron(g, comp))
}

/// Edge sets of the biconnected components (bridges come out as singletons).
fn biconnected_components(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    // Iterative DFS: (vertex, parent, neighbor cursor).
    for start in 0..n {
        if disc[start] != usize::MAX {
            continue;
        }
        let mut frames: Vec<(usize, usize, usize)> = vec![(start, usize::MAX, 0)];
        disc[start] = timer;
        low[start] = timer;
        timer += 1;
        while let Some(&mut (v, parent, ref mut cursor)) = frames.last_mut() {
            let nbrs = g.neighbors(v);
            if *cursor < nbrs.len() {
                let w = nbrs[*cursor];
                *cursor += 1;
                if disc[w] == usize::MAX {
                    stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    frames.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&mut (u, _, _)) = frames.last_mut() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut comp = Vec::new();
                        while let Some(&(a, b)) = stack.last() {
                            if disc[a] >= disc[v] || (a == u && b == v) {
                                comp.push((a, b));
                                stack.pop();
                                if a == u && b == v {
                                    break;
                                }
                            } else {
                                break;
                            }
                        }
                        if !comp.is_empty() {
                            out.push(comp);
                        }
                    }
                }
            }
        }
    }
    out
}

/// One face-extension step target: a bridge is either a single chord between
/// embedded vertices or a component of the unembedded part plus its legs.
struct Bridge {
    attachments: BTreeSet<usize>,
    /// Some path between two distinct attachments whose interior avoids the
    /// embedded vertex set.
    path: Vec<usize>,
}

fn demoucron(g: &Graph, comp_edges: &[(usize, usize)]) -> bool {
    if comp_edges.len() <= 3 {
        return true;
    }
    let verts: BTreeSet<usize> = comp_edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let edge_set: BTreeSet<(usize, usize)> =
        comp_edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    if edge_set.len() > 3 * verts.len() - 6 {
        return false;
    }
    // Start from any cycle; a biconnected component with > 1 edge has one.
    let cycle = match find_cycle(&verts, &edge_set) {
        Some(c) => c,
        None => return true,
    };
    let mut embedded_verts: BTreeSet<usize> = cycle.iter().copied().collect();
    let mut embedded_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        embedded_edges.insert((a.min(b), a.max(b)));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle];
    while embedded_edges.len() < edge_set.len() {
        let bridges = find_bridges(g, &verts, &edge_set, &embedded_verts, &embedded_edges);
        // Admissible faces must contain every attachment of the bridge.
        let admissible: Vec<Vec<usize>> = bridges
            .iter()
            .map(|b| {
                (0..faces.len())
                    .filter(|&f| {
                        let fv: BTreeSet<usize> = faces[f].iter().copied().collect();
                        b.attachments.iter().all(|a| fv.contains(a))
                    })
                    .collect()
            })
            .collect();
        if admissible.iter().any(|a| a.is_empty()) {
            return false;
        }
        let pick = admissible
            .iter()
            .position(|a| a.len() == 1)
            .unwrap_or(0);
        let face_id = admissible[pick][0];
        let path = &bridges[pick].path;
        split_face(&mut faces, face_id, path);
        for w in &path[1..path.len() - 1] {
            embedded_verts.insert(*w);
        }
        for pair in path.windows(2) {
            embedded_edges.insert((pair[0].min(pair[1]), pair[0].max(pair[1])));
        }
    }
    true
}

fn find_cycle(verts: &BTreeSet<usize>, edges: &BTreeSet<(usize, usize)>) -> Option<Vec<usize>> {
    let start = *verts.iter().next()?;
    let mut parent: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    let mut order = vec![start];
    parent.insert(start, start);
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        for &(a, b) in edges.iter() {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(w) {
                e.insert(v);
                order.push(w);
            } else if parent[&v] != w {
                // Back edge v-w closes a cycle through tree paths.
                let path_to_root = |mut x: usize| {
                    let mut p = vec![x];
                    while parent[&x] != x {
                        x = parent[&x];
                        p.push(x);
                    }
                    p
                };
                let pv = path_to_root(v);
                let pw = path_to_root(w);
                let sv: BTreeSet<usize> = pv.iter().copied().collect();
                let meet = *pw.iter().find(|x| sv.contains(x)).unwrap();
                let mut cycle: Vec<usize> =
                    pv.iter().take_while(|&&x| x != meet).copied().collect();
                cycle.push(meet);
                let tail: Vec<usize> =
                    pw.iter().take_while(|&&x| x != meet).copied().collect();
                cycle.extend(tail.iter().rev());
                if cycle.len() >= 3 {
                    return Some(cycle);
                }
            }
        }
    }
    None
}

fn find_bridges(
    g: &Graph,
    verts: &BTreeSet<usize>,
    edges: &BTreeSet<(usize, usize)>,
    emb_v: &BTreeSet<usize>,
    emb_e: &BTreeSet<(usize, usize)>,
) -> Vec<Bridge> {
    let mut bridges = Vec::new();
    for &(a, b) in edges {
        if !emb_e.contains(&(a, b)) && emb_v.contains(&a) && emb_v.contains(&b) {
            bridges.push(Bridge {
                attachments: BTreeSet::from([a, b]),
                path: vec![a, b],
            });
        }
    }
    let outside: Vec<usize> = verts.iter().copied().filter(|v| !emb_v.contains(v)).collect();
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for &s in &outside {
        if seen.contains(&s) {
            continue;
        }
        let mut comp = vec![s];
        seen.insert(s);
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in g.neighbors(v) {
                if verts.contains(&w) && !emb_v.contains(&w) && seen.insert(w) {
                    comp.push(w);
                }
            }
        }
        let inside: BTreeSet<usize> = comp.iter().copied().collect();
        let mut attachments = BTreeSet::new();
        for &v in &comp {
            for &w in g.neighbors(v) {
                if emb_v.contains(&w) && edges.contains(&(v.min(w), v.max(w))) {
                    attachments.insert(w);
                }
            }
        }
        // Biconnected, so >= 2 attachments; connect two through the piece.
        let mut it = attachments.iter();
        let a = *it.next().expect("bridge with no attachment");
        let b = *it.next().expect("bridge with one attachment");
        let path = path_through(g, &inside, a, b);
        bridges.push(Bridge { attachments, path });
    }
    bridges
}

/// Path a..b whose interior stays inside `inside` (both endpoints embedded).
fn path_through(g: &Graph, inside: &BTreeSet<usize>, a: usize, b: usize) -> Vec<usize> {
    let mut prev: std::collections::BTreeMap<usize, usize> = std::collections::BTreeMap::new();
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if w == b && v != a {
                let mut path = vec![b, v];
                let mut cur = v;
                while cur != a {
                    cur = prev[&cur];
                    path.push(cur);
                }
                path.reverse();
                return path;
            }
            if inside.contains(&w) && !prev.contains_key(&w) && w != a {
                prev.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    unreachable!("attachments of one bridge must be linked through it");
}

fn split_face(faces: &mut Vec<Vec<usize>>, face_id: usize, path: &[usize]) {
    let face = faces.swap_remove(face_id);
    let a = path[0];
    let b = *path.last().unwrap();
    let pa = face.iter().position(|&v| v == a).unwrap();
    let pb = face.iter().position(|&v| v == b).unwrap();
    let k = face.len();
    let mut arc1 = Vec::new(); // a forward to b
    let mut i = pa;
    loop {
        arc1.push(face[i]);
        if i == pb {
            break;
        }
        i = (i + 1) % k;
    }
    let mut arc2 = Vec::new(); // b forward to a
    let mut i = pb;
    loop {
        arc2.push(face[i]);
        if i == pa {
            break;
        }
        i = (i + 1) % k;
    }
    let interior: Vec<usize> = path[1..path.len() - 1].to_vec();
    let mut f1 = arc1;
    f1.extend(interior.iter().rev());
    let mut f2 = arc2;
    f2.extend(interior.iter());
    faces.push(f1);
    faces.push(f2);
}
