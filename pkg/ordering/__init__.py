from ordering.order import (VariableOrder, build_order, candidate_scores, induced_subinstance, score_h1, score_h2,
                            value_order, value_orders)
