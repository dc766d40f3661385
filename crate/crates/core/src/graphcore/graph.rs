use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;

use super::GraphError;

/// Index of a vertex inside a [`Graph`] or an [`super::ElectrifiedGraph`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Length measured in half-units: the true length is `self.0 / 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfDistance(pub u32);

impl HalfDistance {
    pub const ZERO: HalfDistance = HalfDistance(0);

    pub fn half_units(self) -> u32 {
        self.0
    }

    /// The distance in ordinary units, exactly.
    pub fn units(self) -> Ratio<u32> {
        Ratio::new(self.0, 2)
    }

    pub fn is_even(self) -> bool {
        self.0.is_multiple_of(2)
    }
}

impl fmt::Display for HalfDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Outcome of a capped shortest-path query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reach {
    At(HalfDistance),
    Unreachable,
    /// A path may exist but none was found within the radius cap.
    CapExceeded,
}

impl Reach {
    pub fn finite(self) -> Option<HalfDistance> {
        match self {
            Reach::At(d) => Some(d),
            _ => None,
        }
    }
}

/// A finite metric graph whose edge lengths are positive half-unit integers.
///
/// Both plain graphs (every edge 2 half-units) and electrified graphs (cone
/// edges of 1 half-unit) implement this, so every diagnostic is written once.
pub trait Space {
    fn vertex_count(&self) -> usize;

    /// Outgoing arcs `(neighbor, length in half-units)`.
    fn arcs(&self, v: VertexId) -> &[(VertexId, u32)];

    fn vertex_name(&self, v: VertexId) -> &str;

    fn vertex_id(&self, name: &str) -> Option<VertexId>;

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if v.0 < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v.to_string()))
        }
    }

    fn id(&self, name: &str) -> Result<VertexId, GraphError> {
        self.vertex_id(name)
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }
}

/// Simple undirected graph with unit edges and named vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    edges: Vec<(VertexId, VertexId)>,
    adj: Vec<Vec<(VertexId, u32)>>,
}

impl Graph {
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self, GraphError> {
        let mut g = Graph::with_vertices(vertices.iter().map(|s| s.as_ref().to_string()))?;
        for (a, b) in edges {
            let a = g.id(a.as_ref())?;
            let b = g.id(b.as_ref())?;
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn with_vertices<I: IntoIterator<Item = String>>(vertices: I) -> Result<Self, GraphError> {
        let mut g = Graph {
            names: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
            adj: Vec::new(),
        };
        for name in vertices {
            if g.index.contains_key(&name) {
                return Err(GraphError::DuplicateVertex(name));
            }
            g.index.insert(name.clone(), VertexId(g.names.len()));
            g.names.push(name);
            g.adj.push(Vec::new());
        }
        Ok(g)
    }

    /// Builds a graph on `0..n` named `v0, v1, …`.
    pub fn from_indices(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::with_vertices((0..n).map(|i| format!("v{i}")))?;
        for &(a, b) in edges {
            if a >= n {
                return Err(GraphError::UnknownVertex(format!("v{a}")));
            }
            if b >= n {
                return Err(GraphError::UnknownVertex(format!("v{b}")));
            }
            g.add_edge(VertexId(a), VertexId(b))?;
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_indices(n, &edges).expect("path graph is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least three vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_indices(n, &edges).expect("cycle graph is simple")
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<(), GraphError> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(GraphError::SelfLoop(self.names[a.0].clone()));
        }
        if self.adj[a.0].iter().any(|&(w, _)| w == b) {
            return Err(GraphError::DuplicateEdge(
                self.names[a.0].clone(),
                self.names[b.0].clone(),
            ));
        }
        self.adj[a.0].push((b, 2));
        self.adj[b.0].push((a, 2));
        self.edges.push((a.min(b), a.max(b)));
        Ok(())
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.names.len()).map(VertexId)
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v.0].iter().map(|&(w, _)| w)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adj[a.0].iter().any(|&(w, _)| w == b)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.0].len()
    }
}

impl Space for Graph {
    fn vertex_count(&self) -> usize {
        self.names.len()
    }

    fn arcs(&self, v: VertexId) -> &[(VertexId, u32)] {
        &self.adj[v.0]
    }

    fn vertex_name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }
}

/// One indexed member `Y_i` of a [`SubsetFamily`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Member {
    pub label: Option<String>,
    pub vertices: Vec<VertexId>,
}

impl Member {
    pub fn as_set(&self) -> Vec<VertexId> {
        let mut v = self.vertices.clone();
        v.sort();
        v.dedup();
        v
    }
}

/// Indexed list of nonempty vertex subsets. Set-equal members under two
/// indices stay two members.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubsetFamily {
    members: Vec<Member>,
}

impl SubsetFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, label: Option<String>, vertices: Vec<VertexId>) -> Result<usize, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptyMember(self.members.len()));
        }
        let mut vertices = vertices;
        vertices.sort();
        vertices.dedup();
        self.members.push(Member { label, vertices });
        Ok(self.members.len() - 1)
    }

    /// Builds a family from vertex names resolved against `g`.
    pub fn from_names<S: AsRef<str>>(g: &impl Space, members: &[Vec<S>]) -> Result<Self, GraphError> {
        let mut fam = SubsetFamily::new();
        for m in members {
            let ids = m.iter().map(|s| g.id(s.as_ref())).collect::<Result<Vec<_>, _>>()?;
            fam.push(None, ids)?;
        }
        Ok(fam)
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn label(&self, i: usize) -> String {
        self.members[i].label.clone().unwrap_or_else(|| format!("Y{i}"))
    }
}

/// A vertex map given by explicit images. Images may be missing when the
/// map comes from a group action on a truncated model (a Farey ball): such a
/// vertex has left the loaded graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    pub label: String,
    forward: Vec<Option<VertexId>>,
}

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        VertexMap {
            label: "id".to_string(),
            forward: (0..n).map(|i| Some(VertexId(i))).collect(),
        }
    }

    pub fn from_images(label: impl Into<String>, forward: Vec<Option<VertexId>>) -> Self {
        VertexMap {
            label: label.into(),
            forward,
        }
    }

    pub fn total(label: impl Into<String>, forward: Vec<VertexId>) -> Self {
        VertexMap::from_images(label, forward.into_iter().map(Some).collect())
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn is_total(&self) -> bool {
        self.forward.iter().all(Option::is_some)
    }

    pub fn image(&self, v: VertexId) -> Option<VertexId> {
        self.forward.get(v.0).copied().flatten()
    }

    /// Image of `v` under the `n`-th iterate, if it stays defined.
    pub fn iterate(&self, v: VertexId, n: usize) -> Option<VertexId> {
        (0..n).try_fold(v, |w, _| self.image(w))
    }

    /// Inverse map, defined on the image.
    pub fn inverse(&self) -> VertexMap {
        let mut back = vec![None; self.forward.len()];
        for (i, img) in self.forward.iter().enumerate() {
            if let Some(w) = img {
                back[w.0] = Some(VertexId(i));
            }
        }
        VertexMap {
            label: format!("{}^-1", self.label),
            forward: back,
        }
    }

    pub fn compose(&self, first: &VertexMap) -> VertexMap {
        let forward = first
            .forward
            .iter()
            .map(|img| img.and_then(|w| self.image(w)))
            .collect();
        VertexMap {
            label: format!("{}*{}", self.label, first.label),
            forward,
        }
    }

    /// Checks that the map is injective and that arcs (with their lengths)
    /// are preserved in both directions wherever both endpoints are mapped.
    /// For a total map this is exactly the automorphism check.
    pub fn validate<S: Space + ?Sized>(&self, g: &S) -> Result<(), GraphError> {
        let n = g.vertex_count();
        let bad = |why: String| GraphError::NotAutomorphism {
            map: self.label.clone(),
            reason: why,
        };
        if self.forward.len() != n {
            return Err(bad(format!(
                "map covers {} vertices, graph has {n}",
                self.forward.len()
            )));
        }
        let mut in_image = vec![false; n];
        for img in self.forward.iter().flatten() {
            if img.0 >= n {
                return Err(bad(format!("image {img} out of range")));
            }
            if std::mem::replace(&mut in_image[img.0], true) {
                return Err(bad(format!("{} hit twice", g.vertex_name(*img))));
            }
        }
        let mut mapped_arcs = 0usize;
        for a in (0..n).map(VertexId) {
            let Some(fa) = self.image(a) else { continue };
            for &(b, len) in g.arcs(a) {
                let Some(fb) = self.image(b) else { continue };
                if !g.arcs(fa).iter().any(|&(w, l)| w == fb && l == len) {
                    return Err(bad(format!(
                        "edge {}-{} sent to non-edge {}-{}",
                        g.vertex_name(a),
                        g.vertex_name(b),
                        g.vertex_name(fa),
                        g.vertex_name(fb)
                    )));
                }
                mapped_arcs += 1;
            }
        }
        // Arcs map injectively into arcs among the image; equal counts mean
        // no non-edge became an edge.
        let image_arcs: usize = (0..n)
            .filter(|&v| in_image[v])
            .map(|v| g.arcs(VertexId(v)).iter().filter(|(w, _)| in_image[w.0]).count())
            .sum();
        if image_arcs != mapped_arcs {
            return Err(bad("a non-edge is sent to an edge".to_string()));
        }
        Ok(())
    }
}
