//! JSON documents read and written by the command-line front end.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::action::BoundAction;
use crate::classify::ClassificationReport;
use crate::error::{Error, Result};
use crate::geom::Pregeometry;
use crate::perm::{PermGroup, Permutation};
use crate::quotient::{QuotientResult, TypeRefiningPartition, UniformityEntry};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Document {
    Group(GroupDoc),
    Pregeometry(PregeometryDoc),
    Binding(BindingDoc),
    Report(Box<ClassificationReport>),
    Partition(PartitionDoc),
    Quotient(Box<QuotientDoc>),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Group(_) => "group",
            Document::Pregeometry(_) => "pregeometry",
            Document::Binding(_) => "binding",
            Document::Report(_) => "report",
            Document::Partition(_) => "partition",
            Document::Quotient(_) => "quotient",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json() + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl GroupDoc {
    pub fn from_group(g: &PermGroup) -> Self {
        GroupDoc { degree: g.degree(), generators: g.generators().iter().map(|p| p.images().to_vec()).collect() }
    }

    pub fn to_group(&self) -> Result<PermGroup> {
        PermGroup::from_images(self.degree, self.generators.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementDoc {
    pub id: usize,
    #[serde(rename = "type")]
    pub ty: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PregeometryDoc {
    pub types: Vec<String>,
    pub elements: Vec<ElementDoc>,
    pub incidences: Vec<[usize; 2]>,
}

impl PregeometryDoc {
    pub fn from_pregeometry(p: &Pregeometry) -> Self {
        PregeometryDoc {
            types: p.types().to_vec(),
            elements: (0..p.element_count())
                .map(|x| ElementDoc { id: x, ty: p.type_label(p.type_of(x)).to_string() })
                .collect(),
            incidences: p.incidences().into_iter().map(|(x, y)| [x, y]).collect(),
        }
    }

    /// The pregeometry with canonical ids and the map from document id to
    /// canonical id.
    pub fn to_pregeometry(&self) -> Result<(Pregeometry, Vec<usize>)> {
        let elements: Vec<(usize, String)> = self.elements.iter().map(|e| (e.id, e.ty.clone())).collect();
        let incidences: Vec<(usize, usize)> = self.incidences.iter().map(|&[x, y]| (x, y)).collect();
        Pregeometry::from_labeled(self.types.clone(), &elements, &incidences)
    }
}

/// Either a path (relative to the referring document) or an inline document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Source {
    Path(PathBuf),
    Inline(Box<Document>),
}

impl Source {
    fn resolve(&self, base: Option<&Path>) -> Result<Document> {
        match self {
            Source::Inline(doc) => Ok((**doc).clone()),
            Source::Path(p) => {
                let full = match base {
                    Some(dir) if p.is_relative() => dir.join(p),
                    _ => p.clone(),
                };
                Document::read(&full)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BindingDoc {
    pub pregeometry: Source,
    pub group: Source,
    /// `alignment[point]` is the pregeometry element id that group point
    /// `point` stands for; identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alignment: Option<Vec<usize>>,
}

impl BindingDoc {
    pub fn inline(a: &BoundAction) -> Self {
        BindingDoc {
            pregeometry: Source::Inline(Box::new(Document::Pregeometry(PregeometryDoc::from_pregeometry(a.geometry())))),
            group: Source::Inline(Box::new(Document::Group(GroupDoc::from_group(a.group())))),
            alignment: None,
        }
    }

    /// Resolves the parts and binds them; relative paths are taken from `base`.
    pub fn bind(&self, base: Option<&Path>) -> Result<BoundAction> {
        let Document::Pregeometry(pdoc) = self.pregeometry.resolve(base)? else {
            return Err(Error::Parse("binding: \"pregeometry\" must be a pregeometry document".into()));
        };
        let Document::Group(gdoc) = self.group.resolve(base)? else {
            return Err(Error::Parse("binding: \"group\" must be a group document".into()));
        };
        let (geometry, relabel) = pdoc.to_pregeometry()?;
        let group = gdoc.to_group()?;
        let n = geometry.element_count();
        if group.degree() != n {
            return Err(Error::DegreeMismatch { expected: n, found: group.degree() });
        }
        let alignment = self.alignment.clone().unwrap_or_else(|| (0..n).collect());
        let align = Permutation::new(alignment).map_err(|e| Error::Parse(format!("alignment: {e}")))?;
        if align.degree() != n {
            return Err(Error::Parse(format!("alignment has length {}, expected {n}", align.degree())));
        }
        let to_canonical: Vec<usize> = (0..n).map(|pt| relabel[align.apply(pt)]).collect();
        let mut from_canonical = vec![0; n];
        for (pt, &c) in to_canonical.iter().enumerate() {
            from_canonical[c] = pt;
        }
        let gens = group
            .generators()
            .iter()
            .map(|g| Permutation::new((0..n).map(|c| to_canonical[g.apply(from_canonical[c])]).collect()))
            .collect::<Result<Vec<_>>>()?;
        BoundAction::bind(geometry, PermGroup::new(n, gens)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionDoc {
    pub parts: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientDoc {
    pub binding: BindingDoc,
    pub parts: Vec<Vec<usize>>,
    pub part_map: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uniformity: Option<Vec<UniformityEntry>>,
}

impl QuotientDoc {
    pub fn from_result(q: &QuotientResult) -> Self {
        QuotientDoc {
            binding: BindingDoc::inline(&q.quotient),
            parts: q.partition.parts().to_vec(),
            part_map: q.part_map.clone(),
            uniformity: q.uniformity.clone(),
        }
    }
}

/// Reads a binding document from `path`.
pub fn load_binding(path: &Path) -> Result<BoundAction> {
    match Document::read(path)? {
        Document::Binding(b) => b.bind(path.parent()),
        other => Err(Error::Parse(format!("{}: expected a binding document, found {:?}", path.display(), other.kind()))),
    }
}

/// Reads a partition document and checks it against the geometry.
pub fn load_partition(path: &Path, geometry: &Pregeometry) -> Result<TypeRefiningPartition> {
    match Document::read(path)? {
        Document::Partition(p) => TypeRefiningPartition::new(geometry, p.parts),
        other => Err(Error::Parse(format!("{}: expected a partition document, found {:?}", path.display(), other.kind()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_fields_and_kinds() {
        assert!(Document::parse(r#"{"kind":"group","degree":2,"generators":[],"extra":1}"#).is_err());
        assert!(Document::parse(r#"{"kind":"widget"}"#).is_err());
        assert!(Document::parse(r#"{"kind":"group","degree":2,"generators":[[1,0]]}"#).is_ok());
    }

    #[test]
    fn unordered_elements_are_canonicalized() {
        let text = r#"{"kind":"binding",
            "pregeometry":{"kind":"pregeometry","types":["p","l"],
                "elements":[{"id":0,"type":"l"},{"id":1,"type":"p"},{"id":2,"type":"p"}],
                "incidences":[[0,1],[0,2]]},
            "group":{"kind":"group","degree":3,"generators":[[0,2,1]]}}"#;
        let Document::Binding(b) = Document::parse(text).unwrap() else { panic!() };
        let a = b.bind(None).unwrap();
        assert_eq!(a.geometry().element_types(), &[0, 0, 1]);
        assert_eq!(a.group().generators()[0].images(), &[1, 0, 2]);
        assert!(a.in_family_g());
    }

    #[test]
    fn alignment_reorders_group_points() {
        let text = r#"{"kind":"binding",
            "pregeometry":{"kind":"pregeometry","types":["a","b"],
                "elements":[{"id":0,"type":"a"},{"id":1,"type":"a"},{"id":2,"type":"b"}],
                "incidences":[[0,2],[1,2]]},
            "group":{"kind":"group","degree":3,"generators":[[0,2,1]]},
            "alignment":[2,0,1]}"#;
        let Document::Binding(b) = Document::parse(text).unwrap() else { panic!() };
        let a = b.bind(None).unwrap();
        assert_eq!(a.group().generators()[0].images(), &[1, 0, 2]);
    }

    #[test]
    fn report_round_trips() {
        let lim = crate::Limits::default();
        let a = crate::gen::fano_pair().unwrap();
        let r = crate::classify::full_report(&a, &lim).unwrap();
        let doc = Document::Report(Box::new(r));
        assert_eq!(Document::parse(&doc.to_json()).unwrap(), doc);
        let q = Document::Binding(BindingDoc::inline(&a));
        let Document::Binding(b) = Document::parse(&q.to_json()).unwrap() else { panic!() };
        assert_eq!(b.bind(None).unwrap().group().order(), 168);
    }
}
