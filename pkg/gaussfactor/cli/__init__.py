# Command modules, one per command group
