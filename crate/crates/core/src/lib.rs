pub mod syntax;
pub mod wf;
pub mod proj;
pub mod rewrite;
pub mod theory;
pub mod kernel;
pub mod stdlib;
pub mod oracle;
pub mod realize;
pub mod eal;
