//! Stallings folding with edge labels in the naming free group `F(S)`.
//!
//! Every edge carries, besides its ambient generator, a word over the names
//! `S`. The labelled graph maintains one invariant: reading any closed path at
//! the base gives a name word that maps to the ambient word read along the
//! same path. Initially the graph is a wedge of petals, one per tuple entry,
//! with the name `sᵢ` on the first edge of petal `i`.
//!
//! Folding two edges with distinct far ends first re-gauges one far end
//! (multiplying the labels around a non-base vertex) so that both edges carry
//! the same name label, then identifies them; this leaves π₁ unchanged. When
//! the far ends already coincide, the fold kills one loop and the difference
//! of the two labels is recorded as a relator. The kernel of `F(S) → ⟨tuple⟩`
//! is the normal closure of the recorded relators.

use crate::word::{Letter, Word};

#[derive(Clone, Debug)]
struct Edge {
    src: usize,
    dst: usize,
    generator: usize,
    label: Word,
}

impl Edge {
    /// Letter read when leaving `v` along this edge, for `v` an endpoint.
    /// Loops are read forwards.
    fn letter_from(&self, v: usize) -> Letter {
        Letter::new(self.generator, self.src != v)
    }
}

pub(crate) struct Folding {
    pub(crate) rank: usize,
    alive: Vec<bool>,
    edges: Vec<Option<Edge>>,
    incident: Vec<Vec<usize>>,
    pub(crate) relators: Vec<Word>,
}

pub(crate) const BASE: usize = 0;

impl Folding {
    /// Wedge of petals for `tuple`; empty entries become relators `sᵢ`.
    pub(crate) fn petals(rank: usize, tuple: &[Word]) -> Self {
        let mut f = Folding {
            rank,
            alive: vec![true],
            edges: Vec::new(),
            incident: vec![Vec::new()],
            relators: Vec::new(),
        };
        for (i, u) in tuple.iter().enumerate() {
            let name = Word::generator(i);
            if u.is_empty() {
                f.relators.push(name);
                continue;
            }
            let n = u.len();
            let mut prev = BASE;
            for (j, &l) in u.letters().iter().enumerate() {
                let next = if j + 1 == n { BASE } else { f.add_vertex() };
                let label = match (j, l.is_inverse()) {
                    (0, false) => name.clone(),
                    (0, true) => name.inverse(),
                    _ => Word::identity(),
                };
                if l.is_inverse() {
                    f.add_edge(next, prev, l.generator(), label);
                } else {
                    f.add_edge(prev, next, l.generator(), label);
                }
                prev = next;
            }
        }
        f
    }

    fn add_vertex(&mut self) -> usize {
        self.alive.push(true);
        self.incident.push(Vec::new());
        self.alive.len() - 1
    }

    fn add_edge(&mut self, src: usize, dst: usize, generator: usize, label: Word) {
        let id = self.edges.len();
        self.edges.push(Some(Edge {
            src,
            dst,
            generator,
            label,
        }));
        self.incident[src].push(id);
        if dst != src {
            self.incident[dst].push(id);
        }
    }

    fn edge(&self, id: usize) -> &Edge {
        self.edges[id].as_ref().expect("live edge")
    }

    fn remove_edge(&mut self, id: usize) {
        let e = self.edges[id].take().expect("live edge");
        self.incident[e.src].retain(|&x| x != id);
        if e.dst != e.src {
            self.incident[e.dst].retain(|&x| x != id);
        }
    }

    /// Name label read when leaving along `id` with `letter`, and the far end.
    fn traverse(&self, id: usize, letter: Letter) -> (Word, usize) {
        let e = self.edge(id);
        if letter.is_inverse() {
            (e.label.inverse(), e.src)
        } else {
            (e.label.clone(), e.dst)
        }
    }

    /// Two distinct edges leaving `v` with the same letter.
    fn collision(&self, v: usize) -> Option<(usize, usize, Letter)> {
        let mut seen: Vec<Option<usize>> = vec![None; 2 * self.rank];
        for &id in &self.incident[v] {
            let e = self.edge(id);
            let letters: &[Letter] = if e.src == e.dst {
                &[
                    Letter::new(e.generator, false),
                    Letter::new(e.generator, true),
                ]
            } else {
                &[e.letter_from(v)]
            };
            for &l in letters {
                match seen[l.code()] {
                    Some(other) => return Some((other, id, l)),
                    None => seen[l.code()] = Some(id),
                }
            }
        }
        None
    }

    /// Replaces `τ` by `ρ⁻¹ τ` on edges leaving `x` and `τ ρ` on edges
    /// entering it. Loop labels at the base are unchanged when `x ≠ base`.
    fn gauge(&mut self, x: usize, rho: &Word) {
        debug_assert_ne!(x, BASE);
        let rho_inv = rho.inverse();
        for &id in &self.incident[x] {
            let e = self.edges[id].as_mut().expect("live edge");
            if e.src == x {
                e.label = rho_inv.concat(&e.label);
            }
            if e.dst == x {
                e.label = e.label.concat(rho);
            }
        }
    }

    /// Moves every edge of `gone` onto `keep` and retires `gone`.
    fn merge_vertices(&mut self, keep: usize, gone: usize) {
        let ids = std::mem::take(&mut self.incident[gone]);
        for id in ids {
            let e = self.edges[id].as_mut().expect("live edge");
            let was_incident = e.src == keep || e.dst == keep;
            if e.src == gone {
                e.src = keep;
            }
            if e.dst == gone {
                e.dst = keep;
            }
            if !was_incident {
                self.incident[keep].push(id);
            }
        }
        self.alive[gone] = false;
    }

    fn fold_pair(&mut self, v: usize, e1: usize, e2: usize, letter: Letter) -> Vec<usize> {
        let (t1, w1) = self.traverse(e1, letter);
        let (t2, w2) = self.traverse(e2, letter);
        if w1 == w2 {
            let r = t1.concat(&t2.inverse());
            self.relators.push(r);
            self.remove_edge(e2);
            return vec![v, w1];
        }
        if w2 != BASE && w2 != v {
            self.gauge(w2, &t2.inverse().concat(&t1));
        } else if w1 != BASE && w1 != v {
            self.gauge(w1, &t1.inverse().concat(&t2));
        } else if w2 == v {
            self.gauge(v, &t2.inverse().concat(&t1));
        } else {
            self.gauge(v, &t1.inverse().concat(&t2));
        }
        debug_assert_eq!(self.traverse(e1, letter).0, self.traverse(e2, letter).0);
        let (keep, gone) = if w1 < w2 { (w1, w2) } else { (w2, w1) };
        self.remove_edge(e2);
        self.merge_vertices(keep, gone);
        vec![keep, v]
    }

    /// Folds until no vertex has two edges with the same letter.
    pub(crate) fn fold(&mut self) {
        let mut queue: Vec<usize> = (0..self.alive.len()).rev().collect();
        while let Some(v) = queue.pop() {
            if !self.alive[v] {
                continue;
            }
            if let Some((e1, e2, l)) = self.collision(v) {
                let touched = self.fold_pair(v, e1, e2, l);
                queue.extend(touched.into_iter().rev());
            }
        }
    }

    /// Removes hanging trees away from the base.
    pub(crate) fn trim(&mut self) {
        let mut queue: Vec<usize> = (1..self.alive.len()).collect();
        while let Some(v) = queue.pop() {
            if v == BASE || !self.alive[v] || self.degree(v) > 1 {
                continue;
            }
            let ids = self.incident[v].clone();
            for id in ids {
                let e = self.edge(id);
                let other = if e.src == v { e.dst } else { e.src };
                self.remove_edge(id);
                queue.push(other);
            }
            self.alive[v] = false;
        }
    }

    fn degree(&self, v: usize) -> usize {
        self.incident[v]
            .iter()
            .map(|&id| {
                let e = self.edge(id);
                if e.src == e.dst {
                    2
                } else {
                    1
                }
            })
            .sum()
    }

    /// Live vertices and `(src, generator, dst)` triples.
    pub(crate) fn skeleton(&self) -> (Vec<usize>, Vec<(usize, usize, usize)>) {
        let vertices = (0..self.alive.len()).filter(|&v| self.alive[v]).collect();
        let edges = self
            .edges
            .iter()
            .flatten()
            .map(|e| (e.src, e.generator, e.dst))
            .collect();
        (vertices, edges)
    }
}
