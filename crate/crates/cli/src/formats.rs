//! File formats (graph6, edge lists, certificates). Filled in as the core
//! lands.
