import bole

log = bole.create_logger("DualRoots")
