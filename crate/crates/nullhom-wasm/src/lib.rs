//! wasm-bindgen surface for the browser demo. Placeholder until the core
//! library lands.

pub fn placeholder() {}
