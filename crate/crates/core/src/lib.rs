pub mod channel;
pub mod codec;
pub mod families;
pub mod gf2;
pub mod peg;
pub mod sim;
