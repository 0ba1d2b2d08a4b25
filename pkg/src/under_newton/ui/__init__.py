"""Static SVG rendering of convergence traces."""
