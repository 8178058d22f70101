//! Spanning cacti, prism Hamilton cycles and exact searches on the planar
//! graph families built from fragments `A`, `C_n` and `D_n`.

pub mod bags;
pub mod blocks;
pub mod cactus;
pub mod certificate;
pub mod connectivity;
pub mod deletion;
pub mod embedding;
pub mod families;
mod error;
pub mod graph;
pub mod lemmas;
pub mod prism;
pub mod search;
pub mod verify;

pub use blocks::{block_decomposition, block_path, Block, BlockDecomposition};
pub use cactus::{analyze_cactus, is_p1p2_good, is_p_good, CactusReport, Classification, EdgePath};
pub use bags::{bags, Interval};
pub use deletion::{classify_deletion, classify_deletion_in, DeletionCase, DeletionReport};
pub use connectivity::{components, is_connected, is_k_connected};
pub use embedding::{check_embedding, FaceReport, RotationEmbedding};
pub use families::{build_chain, build_g, fragment_a, fragment_b, fragment_c, fragment_d, gadget_i, ChartKind, FragmentChart, FragmentKind};
pub use error::{Error, Result};
pub use graph::{delete, induced_subgraph, union, DotStyle, Graph, GraphJson, Item};
pub use prism::{cactus_prism_hamilton, prism, reflect, stitch_hamilton_gd, PathSpec, PrismVertex, Side, StitchReport};
pub use certificate::{verify_certificate, Certificate, Claim, Provenance};
pub use lemmas::{check_lemma, LemmaId, LemmaOptions, LemmaReport, Verdict};
