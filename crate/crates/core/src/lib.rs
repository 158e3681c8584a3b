pub mod boson;
pub mod dyck;
pub mod engine;
pub mod evolution;
pub mod numeric;
pub mod oracle;
pub mod pade;
pub mod parse;
pub mod polynomial;
