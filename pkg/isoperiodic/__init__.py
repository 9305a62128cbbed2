# Copyright (c) the isoperiodic authors. All Rights Reserved
