# Copyright (c) the isoperiodic authors. All Rights Reserved
from isoperiodic.cli import main

if __name__ == "__main__":
    main()
