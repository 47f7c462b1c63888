pub mod arrangement;
pub mod cousin;
pub mod exactla;
pub mod groupoid;
pub mod onedim;
pub mod quiver;
