# Copyright (c) the isoperiodic authors. All Rights Reserved
"""Translation surfaces glued from rectangles, carrying the form dz."""
