"""
PiTree_Engine — tree grafting, foliage hybrids and the π-tree rebuilding
pipeline over the Baire space.

Submodules:
    - trees: finite explicit trees, order queries, small-instance enumerators
    - foliage: foliage trees, leaf universes, fruit/shoot vocabulary, flags
    - grafting: grafts, consistent families, hybrids and foliage hybrids
    - baire: sequences, compact codes, symbolic sets, shadows, standard tree
    - pipeline: graft blueprints, shoot certificates, stage recursion,
      lazy hybrid view and its materialization
    - reports: JSON / DOT / markdown converters and the Twin-File writer
    - verify: law-suite catalog, runner and the command-line entry point
"""
