use std::collections::HashMap;

use super::graph::{Graph, Space, SubsetFamily, VertexId, VertexMap};
use super::GraphError;

/// A graph with one cone vertex per family member, joined to every vertex of
/// the member by an edge of length one half.
///
/// Base vertices keep their ids; cone vertex `i` has id `base.len() + i`.
#[derive(Clone, Debug)]
pub struct ElectrifiedGraph {
    base: Graph,
    family: SubsetFamily,
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    adj: Vec<Vec<(VertexId, u32)>>,
}

/// Cones off every member of `fam` in `g`.
pub fn electrify(g: &Graph, fam: &SubsetFamily) -> Result<ElectrifiedGraph, GraphError> {
    let n = g.vertex_count();
    let mut names: Vec<String> = g.names().to_vec();
    let mut index: HashMap<String, VertexId> = names
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), VertexId(i)))
        .collect();
    let mut adj: Vec<Vec<(VertexId, u32)>> = g.vertices().map(|v| g.arcs(v).to_vec()).collect();

    for (i, member) in fam.members().iter().enumerate() {
        let cone = VertexId(n + i);
        let mut name = format!("cone:{}", fam.label(i));
        while index.contains_key(&name) {
            name.push('\'');
        }
        index.insert(name.clone(), cone);
        names.push(name);
        let mut spokes = Vec::with_capacity(member.vertices.len());
        for &y in &member.vertices {
            if y.0 >= n {
                return Err(GraphError::UnknownVertex(y.to_string()));
            }
            spokes.push((y, 1));
            adj[y.0].push((cone, 1));
        }
        adj.push(spokes);
    }

    Ok(ElectrifiedGraph {
        base: g.clone(),
        family: fam.clone(),
        names,
        index,
        adj,
    })
}

impl ElectrifiedGraph {
    /// The original graph, unchanged.
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn family(&self) -> &SubsetFamily {
        &self.family
    }

    pub fn cone(&self, member: usize) -> VertexId {
        VertexId(self.base.vertex_count() + member)
    }

    pub fn is_cone(&self, v: VertexId) -> bool {
        v.0 >= self.base.vertex_count()
    }

    /// Extends a base automorphism to the cone vertices. Fails unless the
    /// map permutes the family members (as sets).
    pub fn extend_map(&self, map: &VertexMap) -> Result<VertexMap, GraphError> {
        map.validate(&self.base)?;
        if !map.is_total() {
            return Err(GraphError::NotEquivariant {
                map: map.label.clone(),
                member: "partial map".to_string(),
            });
        }
        let mut by_set: HashMap<Vec<VertexId>, Vec<usize>> = HashMap::new();
        for (i, m) in self.family.members().iter().enumerate() {
            by_set.entry(m.as_set()).or_default().push(i);
        }
        let mut forward: Vec<Option<VertexId>> = self.base.vertices().map(|v| map.image(v)).collect();
        // Set-equal members are matched up in index order so the extension
        // stays a bijection on cones.
        let mut used: HashMap<Vec<VertexId>, usize> = HashMap::new();
        for (i, m) in self.family.members().iter().enumerate() {
            let mut img: Vec<VertexId> = m.vertices.iter().map(|&v| map.image(v).unwrap()).collect();
            img.sort();
            let slot = used.entry(img.clone()).or_insert(0);
            let target = by_set
                .get(&img)
                .and_then(|c| c.get(*slot))
                .ok_or_else(|| GraphError::NotEquivariant {
                    map: map.label.clone(),
                    member: self.family.label(i),
                })?;
            *slot += 1;
            forward.push(Some(self.cone(*target)));
        }
        Ok(VertexMap::from_images(map.label.clone(), forward))
    }
}

impl Space for ElectrifiedGraph {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::distance;

    #[test]
    fn empty_family_keeps_base_distances() {
        let g = Graph::cycle(6);
        let z = electrify(&g, &SubsetFamily::new()).unwrap();
        for a in g.vertices() {
            for b in g.vertices() {
                assert_eq!(distance(&g, a, b, None).unwrap(), distance(&z, a, b, None).unwrap());
            }
        }
        assert_eq!(z.base(), &g);
    }

    #[test]
    fn unknown_member_vertex() {
        let g = Graph::path(3);
        let mut fam = SubsetFamily::new();
        fam.push(None, vec![VertexId(7)]).unwrap();
        assert!(matches!(electrify(&g, &fam), Err(GraphError::UnknownVertex(_))));
    }

    #[test]
    fn non_equivariant_family_rejected() {
        let g = Graph::cycle(4);
        let fam = SubsetFamily::from_names(&g, &[vec!["v0", "v1"]]).unwrap();
        let z = electrify(&g, &fam).unwrap();
        let rot = VertexMap::total("rot", (0..4).map(|i| VertexId((i + 1) % 4)).collect());
        assert!(matches!(z.extend_map(&rot), Err(GraphError::NotEquivariant { .. })));
        let refl = VertexMap::total("refl", vec![VertexId(1), VertexId(0), VertexId(3), VertexId(2)]);
        let ext = z.extend_map(&refl).unwrap();
        assert_eq!(ext.image(z.cone(0)), Some(z.cone(0)));
    }
}
