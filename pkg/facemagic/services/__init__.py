"""Grid, labeling, transform, construction, counting and search services."""
