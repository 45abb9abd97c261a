//! Deterministic protocol trees over enumerated input domains.

use super::rectangle::{Rectangle, Side};
use super::run::{Party, ProtocolRun};
use super::ProtocolError;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Hard cap on `|X| · |Y|` for anything that enumerates the domain.
pub const DOMAIN_CAP: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq)]
pub enum TreeNode {
    Leaf {
        accept: bool,
    },
    /// The speaker announces `table[input]`; play continues in the matching
    /// child. The table may only depend on the speaker's own input.
    Internal {
        speaker: Party,
        table: Vec<u8>,
        on_zero: Box<TreeNode>,
        on_one: Box<TreeNode>,
    },
}

/// A deterministic two-party protocol over inputs `x ∈ {0..x_size}`,
/// `y ∈ {0..y_size}`, with a declared depth bound `c` (the communication
/// budget in bits).
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolTree {
    x_size: usize,
    y_size: usize,
    depth_bound: usize,
    root: TreeNode,
}

impl ProtocolTree {
    pub fn new(
        x_size: usize,
        y_size: usize,
        depth_bound: usize,
        root: TreeNode,
    ) -> Result<Self, ProtocolError> {
        let size = x_size as u64 * y_size as u64;
        if size > DOMAIN_CAP {
            return Err(ProtocolError::DomainTooLarge {
                size,
                max: DOMAIN_CAP,
            });
        }
        let actual = Self::check_node(&root, x_size, y_size)?;
        if actual > depth_bound {
            return Err(ProtocolError::DepthExceeded {
                declared: depth_bound,
                actual,
            });
        }
        Ok(ProtocolTree {
            x_size,
            y_size,
            depth_bound,
            root,
        })
    }

    fn check_node(node: &TreeNode, x_size: usize, y_size: usize) -> Result<usize, ProtocolError> {
        match node {
            TreeNode::Leaf { .. } => Ok(0),
            TreeNode::Internal {
                speaker,
                table,
                on_zero,
                on_one,
            } => {
                let expected = match speaker {
                    Party::Alice => x_size,
                    Party::Bob => y_size,
                };
                if table.len() != expected {
                    return Err(ProtocolError::TableSize {
                        expected,
                        actual: table.len(),
                    });
                }
                let d0 = Self::check_node(on_zero, x_size, y_size)?;
                let d1 = Self::check_node(on_one, x_size, y_size)?;
                Ok(1 + d0.max(d1))
            }
        }
    }

    pub fn x_size(&self) -> usize {
        self.x_size
    }

    pub fn y_size(&self) -> usize {
        self.y_size
    }

    /// Declared communication budget `c`.
    pub fn depth_bound(&self) -> usize {
        self.depth_bound
    }

    /// Replays the protocol on one input pair, recording every announced bit.
    pub fn run(&self, x: usize, y: usize) -> ProtocolRun<bool> {
        debug_assert!(x < self.x_size && y < self.y_size);
        let mut transcript = Vec::new();
        let mut node = &self.root;
        loop {
            match node {
                TreeNode::Leaf { accept } => return ProtocolRun::new(transcript, *accept),
                TreeNode::Internal {
                    speaker,
                    table,
                    on_zero,
                    on_one,
                } => {
                    let bit = match speaker {
                        Party::Alice => table[x],
                        Party::Bob => table[y],
                    };
                    transcript.push(bit);
                    node = if bit == 0 { on_zero } else { on_one };
                }
            }
        }
    }

    /// The leaf rectangles of the tree, in leaf order, each flagged with its
    /// accept decision. Walking the tree splits the current candidate sets on
    /// the speaker's message, so the returned rectangles partition `X × Y`.
    pub fn decompose_to_rectangles(&self) -> Result<Vec<(Rectangle, bool)>, ProtocolError> {
        let size = self.x_size as u64 * self.y_size as u64;
        if size > DOMAIN_CAP {
            return Err(ProtocolError::DomainTooLarge {
                size,
                max: DOMAIN_CAP,
            });
        }
        let mut out = Vec::new();
        let a = vec![true; self.x_size];
        let b = vec![true; self.y_size];
        Self::collect_rectangles(&self.root, a, b, &mut out);
        Ok(out)
    }

    fn collect_rectangles(
        node: &TreeNode,
        a: Vec<bool>,
        b: Vec<bool>,
        out: &mut Vec<(Rectangle, bool)>,
    ) {
        match node {
            TreeNode::Leaf { accept } => {
                out.push((Rectangle::new(Side::bits(a), Side::bits(b)), *accept));
            }
            TreeNode::Internal {
                speaker,
                table,
                on_zero,
                on_one,
            } => match speaker {
                Party::Alice => {
                    let mut a0 = a.clone();
                    let mut a1 = a;
                    for (i, keep) in a0.iter_mut().enumerate() {
                        *keep = *keep && table[i] == 0;
                    }
                    for (i, keep) in a1.iter_mut().enumerate() {
                        *keep = *keep && table[i] == 1;
                    }
                    Self::collect_rectangles(on_zero, a0, b.clone(), out);
                    Self::collect_rectangles(on_one, a1, b, out);
                }
                Party::Bob => {
                    let mut b0 = b.clone();
                    let mut b1 = b;
                    for (i, keep) in b0.iter_mut().enumerate() {
                        *keep = *keep && table[i] == 0;
                    }
                    for (i, keep) in b1.iter_mut().enumerate() {
                        *keep = *keep && table[i] == 1;
                    }
                    Self::collect_rectangles(on_zero, a.clone(), b0, out);
                    Self::collect_rectangles(on_one, a, b1, out);
                }
            },
        }
    }

    /// Uniformly random full binary tree of exactly the given depth, with
    /// uniformly random message tables and leaf decisions.
    pub fn random<R: Rng + ?Sized>(
        x_size: usize,
        y_size: usize,
        depth: usize,
        rng: &mut R,
    ) -> Result<Self, ProtocolError> {
        fn build<R: Rng + ?Sized>(
            x_size: usize,
            y_size: usize,
            depth: usize,
            rng: &mut R,
        ) -> TreeNode {
            if depth == 0 {
                return TreeNode::Leaf { accept: rng.gen() };
            }
            let speaker = if rng.gen() { Party::Alice } else { Party::Bob };
            let len = match speaker {
                Party::Alice => x_size,
                Party::Bob => y_size,
            };
            let table = (0..len).map(|_| rng.gen_range(0..2u8)).collect();
            TreeNode::Internal {
                speaker,
                table,
                on_zero: Box::new(build(x_size, y_size, depth - 1, rng)),
                on_one: Box::new(build(x_size, y_size, depth - 1, rng)),
            }
        }
        let root = build(x_size, y_size, depth, rng);
        ProtocolTree::new(x_size, y_size, depth, root)
    }

    /// Serializes to a flat node-list JSON document.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&TreeDocument::from(self)).expect("tree serialization")
    }

    /// Parses the node-list JSON document produced by [`to_json`](Self::to_json).
    pub fn from_json(text: &str) -> Result<Self, ProtocolError> {
        let doc: TreeDocument = serde_json::from_str(text).map_err(|e| {
            ProtocolError::Math(crate::math::MathError::Capacity {
                what: format!("malformed tree document: {e}"),
            })
        })?;
        doc.try_into()
    }
}

/// Flat serialized form: nodes listed pre-order, children by index.
#[derive(Debug, Serialize, Deserialize)]
struct TreeDocument {
    x_size: usize,
    y_size: usize,
    depth_bound: usize,
    root: usize,
    nodes: Vec<NodeRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum NodeRecord {
    Leaf {
        accept: bool,
    },
    Node {
        speaker: Party,
        table: Vec<u8>,
        on_zero: usize,
        on_one: usize,
    },
}

impl From<&ProtocolTree> for TreeDocument {
    fn from(tree: &ProtocolTree) -> Self {
        fn flatten(node: &TreeNode, nodes: &mut Vec<NodeRecord>) -> usize {
            match node {
                TreeNode::Leaf { accept } => {
                    nodes.push(NodeRecord::Leaf { accept: *accept });
                    nodes.len() - 1
                }
                TreeNode::Internal {
                    speaker,
                    table,
                    on_zero,
                    on_one,
                } => {
                    let zero = flatten(on_zero, nodes);
                    let one = flatten(on_one, nodes);
                    nodes.push(NodeRecord::Node {
                        speaker: *speaker,
                        table: table.clone(),
                        on_zero: zero,
                        on_one: one,
                    });
                    nodes.len() - 1
                }
            }
        }
        let mut nodes = Vec::new();
        let root = flatten(&tree.root, &mut nodes);
        TreeDocument {
            x_size: tree.x_size,
            y_size: tree.y_size,
            depth_bound: tree.depth_bound,
            root,
            nodes,
        }
    }
}

impl TryFrom<TreeDocument> for ProtocolTree {
    type Error = ProtocolError;

    fn try_from(doc: TreeDocument) -> Result<Self, ProtocolError> {
        fn rebuild(nodes: &[NodeRecord], at: usize) -> Result<TreeNode, ProtocolError> {
            match nodes.get(at) {
                Some(NodeRecord::Leaf { accept }) => Ok(TreeNode::Leaf { accept: *accept }),
                Some(NodeRecord::Node {
                    speaker,
                    table,
                    on_zero,
                    on_one,
                }) => {
                    // Children must sit strictly earlier in the list, which
                    // also rules out cycles.
                    if *on_zero >= at || *on_one >= at {
                        return Err(ProtocolError::MixedSupport);
                    }
                    Ok(TreeNode::Internal {
                        speaker: *speaker,
                        table: table.clone(),
                        on_zero: Box::new(rebuild(nodes, *on_zero)?),
                        on_one: Box::new(rebuild(nodes, *on_one)?),
                    })
                }
                None => Err(ProtocolError::MixedSupport),
            }
        }
        let root = rebuild(&doc.nodes, doc.root)?;
        ProtocolTree::new(doc.x_size, doc.y_size, doc.depth_bound, root)
    }
}
