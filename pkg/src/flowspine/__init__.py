"""DS-diagrams of flow-spines: validation, homology, admissibility, coil surgery and a census."""
