mod engine;
pub mod hilbert;
pub mod ideal;
pub mod oracle;
pub mod schreyer;
pub mod syzygy;
pub mod vector;

pub use engine::GbOptions;
pub use hilbert::HilbertSeries;
pub use ideal::{GroebnerBasis, IdealHandle};
pub use syzygy::{polynomial_syzygies, syzygies, SyzygyModule};
pub use vector::{FreeModule, MTerm, ModuleOrder, Vector};
