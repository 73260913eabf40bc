# Substructural proof kit package
