"""Human-readable feature-structure views of annotation and resolution records."""
from typing import List

from .kb import RESERVED_ATTRIBUTES, EntityTemplate
from .pipeline import AnnotatedMention
from .resolver import Resolution


def _template_lines(template: EntityTemplate) -> List[str]:
    names = [n for n in RESERVED_ATTRIBUTES if n in template.attributes]
    names += sorted(n for n in template.attributes if n not in RESERVED_ATTRIBUTES)
    lines = ['  EntityTemplate{']
    for name in names:
        lines.append(f"    {name} = {' && '.join(template.attributes[name])};")
    lines.append('  }')
    return lines


def render_entity(annotated: AnnotatedMention) -> str:
    mention = annotated.mention
    lines = [
        f"# {mention.doc_id} [{mention.span.start}, {mention.span.end})",
        'Entity{',
        f"  Lexical_unit={mention.lexical_unit};",
        '  Sem{',
        f"    Type={mention.sem.entity_type};",
        f"    Focalisation={mention.sem.focalisation}; }}",
    ]
    if annotated.trace is not None:
        trace = annotated.trace
        competing = ', '.join(trace.competing_rules) or '-'
        lines.append(f"  Trace{{ Rule={trace.fired_rule or '-'}; Competing={competing}; }}")
    if annotated.template is not None:
        lines.extend(_template_lines(annotated.template))
    lines.append('}')
    return '\n'.join(lines)


def render_resolution(resolution: Resolution) -> str:
    description = resolution.description
    lines = [
        f"# {description.doc_id} [{description.span.start}, {description.span.end})",
        resolution.syn(),
    ]
    if resolution.justification:
        lines.append(f"Justification: {resolution.justification}")
    if len(resolution.candidates) > 1:
        others = ', '.join(f"{attribute}({entity_id})" for entity_id, attribute in resolution.candidates[1:])
        lines.append(f"Other candidates: {others}")
    return '\n'.join(lines)
