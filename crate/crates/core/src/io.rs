//! JSON file formats for graphs, colourings and sequences.

use serde::{Deserialize, Serialize};

use crate::error::{RecolorError, Result};
use crate::graph::{Graph, Vertex};
use crate::instance::{Colour, Colouring, ListInstance};
use crate::planar::embedding::Embedding;
use crate::sequence::{RecoloringSequence, Step};

/// `{"n", "edges", "lists"?, "rotation"?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lists: Option<Vec<Vec<Colour>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<Vec<Vertex>>>,
}

impl GraphFile {
    pub fn from_graph(g: &Graph) -> Self {
        GraphFile { n: g.n(), edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(), lists: None, rotation: None }
    }

    pub fn from_embedding(e: &Embedding) -> Self {
        GraphFile { rotation: Some(e.rotation().to_vec()), ..Self::from_graph(e.graph()) }
    }

    pub fn from_instance(inst: &ListInstance) -> Self {
        GraphFile { lists: Some(inst.lists().to_vec()), ..Self::from_graph(inst.graph()) }
    }

    pub fn graph(&self) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().map(|&[u, v]| (u, v)))
    }

    pub fn embedding(&self) -> Result<Option<Embedding>> {
        match &self.rotation {
            None => Ok(None),
            Some(r) => Embedding::new(self.graph()?, r.clone()).map(Some),
        }
    }

    /// Instance from the file's `lists`, or from `colours` (full lists `0..k`)
    /// when the file carries none. Exactly one of them must be present.
    /// Without an explicit `a`, full lists use `k - 1 - d` and explicit lists the
    /// largest `a` they satisfy.
    pub fn instance(&self, colours: Option<usize>, a: Option<usize>) -> Result<ListInstance> {
        let g = self.graph()?;
        match (&self.lists, colours) {
            (Some(_), Some(_)) => Err(RecolorError::InvalidInput(
                "the graph file carries lists; --colors cannot be combined with them".into(),
            )),
            (None, None) => Err(RecolorError::InvalidInput("no lists in the graph file and no --colors given".into())),
            (None, Some(k)) => match a {
                None => ListInstance::classical(g, k),
                Some(a) => ListInstance::uniform(g, k, a),
            },
            (Some(lists), None) => {
                let inst = ListInstance::with_peeling(g, lists.clone(), 0)?;
                let a = match a {
                    Some(a) => a,
                    None => (0..inst.n())
                        .map(|v| inst.list(v).len().saturating_sub(inst.ordering().outdeg(v) + 1))
                        .min()
                        .unwrap_or(0),
                };
                ListInstance::with_peeling(inst.graph().clone(), lists.clone(), a)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceMeta {
    pub length: usize,
    pub per_vertex: Vec<usize>,
}

/// `{"steps": [{"v", "c"}], "meta": {"length", "per_vertex"}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceFile {
    pub steps: Vec<Step>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<SequenceMeta>,
}

impl SequenceFile {
    pub fn new(seq: &RecoloringSequence, n: usize) -> Self {
        SequenceFile {
            steps: seq.steps.clone(),
            meta: Some(SequenceMeta { length: seq.len(), per_vertex: seq.per_vertex(n) }),
        }
    }

    pub fn sequence(&self) -> RecoloringSequence {
        RecoloringSequence::from_steps(self.steps.clone())
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| RecolorError::InvalidInput(format!("bad {what} JSON: {e}")))
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    parse(text, "graph")
}

pub fn parse_colouring(text: &str) -> Result<Colouring> {
    parse(text, "colouring")
}

pub fn parse_sequence(text: &str) -> Result<SequenceFile> {
    parse(text, "sequence")
}

/// Compact JSON; serialisation of these types cannot fail.
pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serialises")
}
