use std::collections::VecDeque;

use super::fold::{Folding, BASE};
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// Folded core graph of a finitely generated subgroup of a free group.
///
/// Vertices are numbered by breadth-first search from the base (vertex 0),
/// visiting letters in the order `g₀ < g₀⁻¹ < g₁ < …`. Since a folded graph is
/// deterministic in both directions, that numbering is canonical: two graphs
/// compare equal exactly when they represent the same subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StallingsGraph {
    rank: usize,
    vertex_count: usize,
    /// Sorted `(source, generator, target)` triples.
    edges: Vec<(usize, usize, usize)>,
    /// `step[v][letter.code()]`: where reading `letter` from `v` leads.
    step: Vec<Vec<Option<usize>>>,
}

fn check_rank(rank: usize, words: &[Word]) -> Result<()> {
    for w in words {
        if let Some(g) = w.max_generator().filter(|&g| g >= rank) {
            return Err(Error::UnknownGenerator {
                index: g,
                size: rank,
            });
        }
    }
    Ok(())
}

impl StallingsGraph {
    /// Folded core graph of `⟨generators⟩ ≤ F(rank)`.
    pub fn build(rank: usize, generators: &[Word]) -> Result<Self> {
        Ok(Self::fold_tuple(rank, generators)?.0)
    }

    /// Folds the tuple and also returns the relators found along the way, as
    /// words over the tuple positions.
    pub(crate) fn fold_tuple(rank: usize, tuple: &[Word]) -> Result<(Self, Vec<Word>)> {
        check_rank(rank, tuple)?;
        let mut folding = Folding::petals(rank, tuple);
        folding.fold();
        folding.trim();
        let (vertices, edges) = folding.skeleton();
        let graph = StallingsGraph::canonical(rank, &vertices, &edges);
        Ok((graph, std::mem::take(&mut folding.relators)))
    }

    fn canonical(rank: usize, vertices: &[usize], edges: &[(usize, usize, usize)]) -> Self {
        let size = vertices.iter().max().map_or(1, |&v| v + 1);
        let mut raw_step = vec![vec![None; 2 * rank]; size];
        for &(s, g, t) in edges {
            raw_step[s][Letter::new(g, false).code()] = Some(t);
            raw_step[t][Letter::new(g, true).code()] = Some(s);
        }
        let mut number = vec![None; size];
        number[BASE] = Some(0);
        let mut order = vec![BASE];
        let mut queue = VecDeque::from([BASE]);
        while let Some(v) = queue.pop_front() {
            for t in raw_step[v].iter().flatten() {
                if number[*t].is_none() {
                    number[*t] = Some(order.len());
                    order.push(*t);
                    queue.push_back(*t);
                }
            }
        }
        let renumber = |v: usize| number[v].expect("folded graph is connected");
        let mut new_edges: Vec<_> = edges
            .iter()
            .map(|&(s, g, t)| (renumber(s), g, renumber(t)))
            .collect();
        new_edges.sort_unstable();
        let step = order
            .iter()
            .map(|&v| raw_step[v].iter().map(|t| t.map(renumber)).collect())
            .collect();
        StallingsGraph {
            rank,
            vertex_count: order.len(),
            edges: new_edges,
            step,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    /// Free rank of the subgroup, `|E| − |V| + 1`.
    pub fn graph_rank(&self) -> usize {
        self.edges.len() + 1 - self.vertex_count
    }

    /// Membership: `w` reads a closed path at the base.
    pub fn contains(&self, w: &Word) -> bool {
        let mut v = BASE;
        for l in w.letters() {
            if l.generator() >= self.rank {
                return false;
            }
            match self.step[v][l.code()] {
                Some(t) => v = t,
                None => return false,
            }
        }
        v == BASE
    }

    /// No vertex has two outgoing edges, or two incoming edges, with one label.
    pub fn is_folded(&self) -> bool {
        let mut seen = vec![vec![false; 2 * self.rank]; self.vertex_count];
        for &(s, g, t) in &self.edges {
            for (v, l) in [(s, Letter::new(g, false)), (t, Letter::new(g, true))] {
                if std::mem::replace(&mut seen[v][l.code()], true) {
                    return false;
                }
            }
        }
        true
    }

    /// Every vertex other than the base has degree at least two.
    pub fn is_core(&self) -> bool {
        let mut degree = vec![0usize; self.vertex_count];
        for &(s, _, t) in &self.edges {
            degree[s] += 1;
            degree[t] += 1;
        }
        degree.iter().skip(1).all(|&d| d >= 2)
    }
}
