from cofree.cli import run

run()
